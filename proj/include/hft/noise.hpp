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

#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "hft/circuit.hpp"
#include "hft/pauli.hpp"
#include "hft/rng.hpp"

namespace hft {

enum Channel : uint8_t {
  ch_gate1 = 1,
  ch_gate2 = 2,
  ch_meas = 4,
  ch_idle = 8,
};

// Per-role rate multipliers binding the physical parameters to circuit
// locations. The "calibrated" profile reproduces the regime of the reference
// benchmarks: full-strength noise on ancilla preparation and verification
// (where the extraction methods differ), a per-round depolarizing
// background on data qubits, and reduced-strength coupling noise; the
// "circuit" profile applies the raw per-gate rates everywhere.
struct NoiseBinding {
  std::string name = "circuit";
  double prep = 1.0;
  double coupling = 1.0;
  double readout = 1.0;
  double background = 0.0;  // per-round data depolarizing, in units of p1
  double recovery = 0.0;
  double generic = 1.0;

  static NoiseBinding circuit_level() { return NoiseBinding{}; }
  static NoiseBinding calibrated() {
    NoiseBinding b;
    b.name = "calibrated";
    b.prep = 0.10;
    b.coupling = 0.0095;
    b.readout = 0.05;
    b.background = 1.0;
    b.recovery = 0.0;
    return b;
  }

  double scale(NoiseRole role) const {
    switch (role) {
      case NoiseRole::prep: return prep;
      case NoiseRole::coupling: return coupling;
      case NoiseRole::readout: return readout;
      case NoiseRole::background: return background;
      case NoiseRole::recovery: return recovery;
      default: return generic;
    }
  }
};

struct NoiseModel {
  double p1 = 0.001;
  double p2 = 0.01;
  double p_meas = 0.015;
  double t1_us = 100.0;
  double t2_us = 80.0;
  double gate_time_1q_us = 0.05;
  double gate_time_2q_us = 0.3;
  double meas_time_us = 1.0;
  uint8_t enabled = ch_gate1 | ch_gate2 | ch_meas;
  NoiseBinding binding;

  static NoiseModel defaults() { return NoiseModel{}; }

  static NoiseModel noiseless() {
    NoiseModel m;
    m.p1 = m.p2 = m.p_meas = 0.0;
    m.enabled = 0;
    m.binding.background = 0.0;
    return m;
  }

  // Proportional sweep convention: p_phys = p1, p2 = 10 p1, p_meas = 15 p1;
  // relaxation times fixed.
  static NoiseModel proportional(double p_phys) {
    NoiseModel m;
    m.p1 = p_phys;
    m.p2 = 10.0 * p_phys;
    m.p_meas = 15.0 * p_phys;
    return m;
  }

  bool is_noiseless() const {
    return p1 == 0.0 && p2 == 0.0 && p_meas == 0.0;
  }

  std::string describe() const;
};

// Weight <= 1 Pauli: identity with probability 1-p, else X/Y/Z uniformly.
PauliKind sample_depolarizing_1q(double p, CounterRng& rng);

// Jointly non-identity with probability p, uniform over the 15 two-qubit
// non-identity Paulis.
std::pair<PauliKind, PauliKind> sample_depolarizing_2q(double p,
                                                       CounterRng& rng);

bool sample_meas_flip(double p, CounterRng& rng);

// Pauli twirl of amplitude + phase damping over the given duration.
PauliKind sample_idle(double duration_us, double t1_us, double t2_us,
                      CounterRng& rng);

// Twirl probabilities (p_x = p_y, p_z); exposed for tests.
void idle_twirl_probs(double duration_us, double t1_us, double t2_us,
                      double* p_x, double* p_z);

// Inserts noise sites: a 1q site after every 1q gate, a 2q site after every
// CX, a flip site before every measurement, idle sites per time step when
// the idle channel is enabled, and per-round background sites on the data
// register when the binding requests them. Deterministic placement;
// instrumenting an already-instrumented circuit throws.
Circuit instrument(const Circuit& c, const NoiseModel& m);

}  // namespace hft
