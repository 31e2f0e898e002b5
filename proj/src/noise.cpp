// Copyright 2026 The HFT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hft/noise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hft {

std::string NoiseModel::describe() const {
  std::ostringstream s;
  s << "p1=" << p1 << " p2=" << p2 << " p_meas=" << p_meas << " t1=" << t1_us
    << "us t2=" << t2_us << "us channels=";
  if (enabled & ch_gate1) s << "gate1,";
  if (enabled & ch_gate2) s << "gate2,";
  if (enabled & ch_meas) s << "meas,";
  if (enabled & ch_idle) s << "idle,";
  s << " binding=" << binding.name;
  return s.str();
}

PauliKind sample_depolarizing_1q(double p, CounterRng& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p out of range");
  if (p == 0.0) return PauliKind::I;
  double u = rng.next_double();
  if (u >= p) return PauliKind::I;
  // u in [0, p): split into thirds exactly.
  if (u < p / 3) return PauliKind::X;
  if (u < 2 * p / 3) return PauliKind::Y;
  return PauliKind::Z;
}

std::pair<PauliKind, PauliKind> sample_depolarizing_2q(double p,
                                                       CounterRng& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p out of range");
  if (p == 0.0) return {PauliKind::I, PauliKind::I};
  double u = rng.next_double();
  if (u >= p) return {PauliKind::I, PauliKind::I};
  uint32_t idx = 1 + uint32_t(u / p * 15);  // 1..15, uniform
  if (idx > 15) idx = 15;
  static const PauliKind table[4] = {PauliKind::I, PauliKind::X, PauliKind::Z,
                                     PauliKind::Y};
  return {table[idx >> 2], table[idx & 3]};
}

bool sample_meas_flip(double p, CounterRng& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p out of range");
  if (p == 0.0) return false;
  if (p == 1.0) return true;
  return rng.next_double() < p;
}

void idle_twirl_probs(double duration_us, double t1_us, double t2_us,
                      double* p_x, double* p_z) {
  if (duration_us < 0) throw std::invalid_argument("negative duration");
  if (t2_us > 2 * t1_us) throw std::invalid_argument("t2 must be <= 2 t1");
  double decay1 = 1.0 - std::exp(-duration_us / t1_us);
  double decay2 = 1.0 - std::exp(-duration_us / t2_us);
  *p_x = decay1 / 4.0;
  *p_z = decay2 / 2.0 - decay1 / 4.0;
}

PauliKind sample_idle(double duration_us, double t1_us, double t2_us,
                      CounterRng& rng) {
  if (duration_us == 0) return PauliKind::I;
  double px, pz;
  idle_twirl_probs(duration_us, t1_us, t2_us, &px, &pz);
  double u = rng.next_double();
  if (u < px) return PauliKind::X;
  if (u < 2 * px) return PauliKind::Y;
  if (u < 2 * px + pz) return PauliKind::Z;
  return PauliKind::I;
}

Circuit instrument(const Circuit& c, const NoiseModel& m) {
  if (c.has_noise_sites())
    throw std::invalid_argument("circuit already instrumented");
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.n_clbits = c.n_clbits;
  out.qregs = c.qregs;
  out.cregs = c.cregs;

  bool background = m.binding.background > 0.0;
  Register data{0, 0};
  auto it = c.qregs.find("data");
  if (it != c.qregs.end()) data = it->second;

  // ASAP layer index per qubit, used for idle-site durations.
  std::vector<size_t> tick(c.n_qubits, 0);
  auto emit_background = [&]() {
    if (!background || data.count == 0) return;
    for (uint32_t q = data.start; q < data.start + data.count; q++) {
      Instruction s;
      s.kind = InstrKind::noise1;
      s.q0 = s.q1 = q;
      s.role = NoiseRole::background;
      out.instructions.push_back(s);
    }
  };

  for (const auto& i : c.instructions) {
    if (i.kind == InstrKind::tick) {
      out.instructions.push_back(i);
      emit_background();
      continue;
    }
    out.instructions.push_back(i);
    switch (i.kind) {
      case InstrKind::gate:
        if (i.gate == GateKind::CX) {
          if (m.enabled & ch_gate2) {
            Instruction s;
            s.kind = InstrKind::noise2;
            s.q0 = i.q0;
            s.q1 = i.q1;
            s.role = i.role;
            out.instructions.push_back(s);
          }
          tick[i.q0] = tick[i.q1] = std::max(tick[i.q0], tick[i.q1]) + 1;
        } else {
          if (m.enabled & ch_gate1) {
            Instruction s;
            s.kind = InstrKind::noise1;
            s.q0 = s.q1 = i.q0;
            s.role = i.role;
            out.instructions.push_back(s);
          }
          tick[i.q0]++;
        }
        break;
      case InstrKind::measure: {
        if (m.enabled & ch_meas) {
          // Flip site goes before the measurement it affects.
          Instruction s;
          s.kind = InstrKind::noise_m;
          s.q0 = s.q1 = i.q0;
          s.role = i.role;
          out.instructions.back() = s;
          out.instructions.push_back(i);
        }
        tick[i.q0]++;
        break;
      }
      case InstrKind::cpauli:
        if ((m.enabled & ch_gate1) && m.binding.recovery > 0.0) {
          Instruction s;
          s.kind = InstrKind::noise1;
          s.q0 = s.q1 = i.q0;
          s.role = NoiseRole::recovery;
          out.instructions.push_back(s);
        }
        tick[i.q0]++;
        break;
      default: break;
    }
  }

  // Idle decoherence: one pass computing per-qubit total busy ticks, then a
  // site per idle tick. Kept coarse (uniform step duration = 2q gate time).
  if (m.enabled & ch_idle) {
    size_t max_tick = 0;
    for (size_t t : tick) max_tick = std::max(max_tick, t);
    for (uint32_t q = 0; q < c.n_qubits; q++) {
      size_t idle_ticks = max_tick - tick[q];
      if (idle_ticks == 0) continue;
      Instruction s;
      s.kind = InstrKind::idle;
      s.q0 = s.q1 = q;
      s.dur_us = double(idle_ticks) * m.gate_time_2q_us;
      s.role = NoiseRole::idle;
      out.instructions.push_back(s);
    }
  }
  return out;
}

}  // namespace hft
