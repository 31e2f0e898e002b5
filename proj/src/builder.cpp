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

#include "hft/builder.hpp"

#include <algorithm>

namespace hft {

const char* mode_name(ExtractionMode m) {
  switch (m) {
    case ExtractionMode::standard: return "standard";
    case ExtractionMode::cat: return "cat";
    case ExtractionMode::steane: return "steane";
  }
  return "?";
}

ExtractionMode mode_from_name(const std::string& s) {
  if (s == "standard") return ExtractionMode::standard;
  if (s == "cat") return ExtractionMode::cat;
  if (s == "steane") return ExtractionMode::steane;
  throw ConfigError("unknown mode: " + s);
}

const char* readout_name(ReadoutPolicy r) {
  return r == ReadoutPolicy::sequential ? "sequential" : "batched";
}

ReadoutPolicy readout_from_name(const std::string& s) {
  if (s == "sequential") return ReadoutPolicy::sequential;
  if (s == "batched") return ReadoutPolicy::batched;
  throw ConfigError("unknown readout policy: " + s);
}

namespace {

std::vector<size_t> support_of(const BitVec& row) {
  std::vector<size_t> s;
  for (size_t i = 0; i < row.size(); i++)
    if (row.get(i)) s.push_back(i);
  return s;
}

const BitVec& stab_row(const CssCode& code, size_t index, StabType type) {
  return type == StabType::Z ? code.hz.row(index) : code.hx.row(index);
}

}  // namespace

EncoderPlan encoder_plan(const CssCode& code) {
  BinaryMatrix rref = code.hx;
  rref.eliminate();
  EncoderPlan plan;
  for (size_t r = 0; r < rref.rows(); r++) {
    int pivot = rref.row(r).lowest_set();
    if (pivot < 0) continue;
    plan.pivots.push_back(size_t(pivot));
    std::vector<size_t> fan;
    for (size_t qc = 0; qc < code.n; qc++)
      if (qc != size_t(pivot) && rref.row(r).get(qc)) fan.push_back(qc);
    plan.fanouts.push_back(fan);
  }
  return plan;
}

void emit_encoder(Circuit& c, const CssCode& code, uint32_t block,
                  NoiseRole role) {
  EncoderPlan plan = encoder_plan(code);
  for (size_t r = 0; r < plan.pivots.size(); r++) {
    c.gate1(GateKind::H, block + uint32_t(plan.pivots[r]), role);
    for (size_t q : plan.fanouts[r])
      c.cx(block + uint32_t(plan.pivots[r]), block + uint32_t(q), role);
  }
}

Circuit build_encoder(const CssCode& code) {
  if (code.k != 1)
    throw std::invalid_argument("encoder construction needs k = 1");
  Circuit c;
  c.add_qreg("data", uint32_t(code.n));
  emit_encoder(c, code, 0, NoiseRole::prep);
  return c;
}

Circuit build_cat_prep(size_t w, size_t v) {
  if (w < 2) throw std::invalid_argument("cat state needs w >= 2");
  Circuit c;
  c.add_qreg("cat", uint32_t(w + v));
  c.gate1(GateKind::H, 0, NoiseRole::prep);
  for (size_t i = 0; i + 1 < w + v; i++)
    c.cx(uint32_t(i), uint32_t(i + 1), NoiseRole::prep);
  return c;
}

namespace {

// Shared emission for one verified cat extraction. Bit/qubit indices are
// all absolute within c.
struct CatPlacement {
  uint32_t data;   // data block offset
  uint32_t cat;    // first cat qubit
  uint32_t ver_c;  // first verification clbit (v bits)
  uint32_t m_c;    // first core readout clbit (w bits)
  uint32_t syn_c;  // syndrome clbit
};

void emit_cat_extraction(Circuit& c, const CssCode& code, size_t stab_index,
                         StabType type, size_t v, const CatPlacement& at,
                         bool with_resets) {
  auto support = support_of(stab_row(code, stab_index, type));
  size_t w = support.size();
  if (w < 2) throw std::invalid_argument("stabilizer weight < 2");
  if (v < 1) throw std::invalid_argument("cat extraction needs v >= 1");
  if (with_resets)
    for (size_t i = 0; i < w + v; i++) c.reset(at.cat + uint32_t(i));
  // Preparation: H + chain over all w+v ancillas.
  c.gate1(GateKind::H, at.cat, NoiseRole::prep);
  for (size_t i = 0; i + 1 < w + v; i++)
    c.cx(at.cat + uint32_t(i), at.cat + uint32_t(i + 1), NoiseRole::prep);
  // Verification: decouple each tail ancilla against ancilla 0 and read it
  // out before any data interaction. Any single preparation fault leaves a
  // suffix flip pattern, which every check anchored at ancilla 0 detects.
  for (size_t j = 0; j < v; j++) {
    c.cx(at.cat, at.cat + uint32_t(w + j), NoiseRole::prep);
    c.measure(at.cat + uint32_t(w + j), at.ver_c + uint32_t(j),
              NoiseRole::prep);
  }
  // Coupling: each core ancilla talks to exactly one data qubit.
  for (size_t i = 0; i < w; i++) {
    uint32_t a = at.cat + uint32_t(i);
    uint32_t d = at.data + uint32_t(support[i]);
    if (type == StabType::X) {
      c.cx(a, d, NoiseRole::coupling);
    } else {
      // CZ via {H, CX} with the basis change on the cat side.
      c.gate1(GateKind::H, a, NoiseRole::coupling);
      c.cx(d, a, NoiseRole::coupling);
      c.gate1(GateKind::H, a, NoiseRole::coupling);
    }
  }
  // Conjugate-basis readout of the core; syndrome = parity of outcomes.
  std::vector<uint32_t> m_bits;
  for (size_t i = 0; i < w; i++) {
    c.gate1(GateKind::H, at.cat + uint32_t(i), NoiseRole::readout);
    c.measure(at.cat + uint32_t(i), at.m_c + uint32_t(i), NoiseRole::readout);
    m_bits.push_back(at.m_c + uint32_t(i));
  }
  c.parity(at.syn_c, m_bits);
}

}  // namespace

Circuit build_shor_extraction(const CssCode& code, size_t stab_index,
                              StabType type, size_t v) {
  auto support = support_of(stab_row(code, stab_index, type));
  size_t w = support.size();
  Circuit c;
  c.add_qreg("data", uint32_t(code.n));
  Register cat = c.add_qreg("cat", uint32_t(w + v));
  Register ver = c.add_creg("ver", uint32_t(v));
  Register m = c.add_creg("m", uint32_t(w));
  Register syn = c.add_creg("syn", 1);
  CatPlacement at{0, cat.start, ver.start, m.start, syn.start};
  emit_cat_extraction(c, code, stab_index, type, v, at, false);
  return c;
}

Circuit build_standard_extraction(const CssCode& code, size_t stab_index,
                                  StabType type) {
  Circuit c;
  c.add_qreg("data", uint32_t(code.n));
  Register anc = c.add_qreg("anc", 1);
  Register syn = c.add_creg("syn", 1);
  auto support = support_of(stab_row(code, stab_index, type));
  if (type == StabType::Z) {
    // |0> ancilla accumulates the Z-parity of the support.
    for (size_t q : support) c.cx(uint32_t(q), anc.start, NoiseRole::coupling);
    c.measure(anc.start, syn.start, NoiseRole::readout);
  } else {
    // |+> ancilla as the control; the textbook spread-prone construction.
    c.gate1(GateKind::H, anc.start, NoiseRole::prep);
    for (size_t q : support) c.cx(anc.start, uint32_t(q), NoiseRole::coupling);
    c.gate1(GateKind::H, anc.start, NoiseRole::readout);
    c.measure(anc.start, syn.start, NoiseRole::readout);
  }
  return c;
}

void emit_steane_verify(Circuit& c, const CssCode& code, AncillaBasis basis,
                        uint32_t block, uint32_t copy, uint32_t vm_base,
                        uint32_t chk_base, bool with_resets) {
  size_t n = code.n;
  if (with_resets)
    for (size_t i = 0; i < n; i++) c.reset(copy + uint32_t(i));
  emit_encoder(c, code, copy, NoiseRole::prep);
  if (basis == AncillaBasis::plus_l) {
    for (size_t i = 0; i < n; i++)
      c.gate1(GateKind::H, copy + uint32_t(i), NoiseRole::prep);
  }
  if (basis == AncillaBasis::zero_l) {
    // Copy the block's X-error information onto the fresh copy and read it
    // out; catches every detectable X pattern plus the logical-X class via
    // the parity bit.
    for (size_t i = 0; i < n; i++)
      c.cx(block + uint32_t(i), copy + uint32_t(i), NoiseRole::prep);
    for (size_t i = 0; i < n; i++)
      c.measure(copy + uint32_t(i), vm_base + uint32_t(i), NoiseRole::prep);
    for (size_t r = 0; r < code.hz.rows(); r++) {
      std::vector<uint32_t> ins;
      for (size_t q : support_of(code.hz.row(r)))
        ins.push_back(vm_base + uint32_t(q));
      c.parity(chk_base + uint32_t(r), ins);
    }
    std::vector<uint32_t> lp;
    for (size_t q : support_of(code.logical_z.z_bits))
      lp.push_back(vm_base + uint32_t(q));
    c.parity(chk_base + uint32_t(code.hz.rows()), lp);
  } else {
    // Dual direction: the copy picks up the block's Z-error information and
    // is read in the X basis.
    for (size_t i = 0; i < n; i++)
      c.cx(copy + uint32_t(i), block + uint32_t(i), NoiseRole::prep);
    for (size_t i = 0; i < n; i++) {
      c.gate1(GateKind::H, copy + uint32_t(i), NoiseRole::prep);
      c.measure(copy + uint32_t(i), vm_base + uint32_t(i), NoiseRole::prep);
    }
    for (size_t r = 0; r < code.hx.rows(); r++) {
      std::vector<uint32_t> ins;
      for (size_t q : support_of(code.hx.row(r)))
        ins.push_back(vm_base + uint32_t(q));
      c.parity(chk_base + uint32_t(r), ins);
    }
    std::vector<uint32_t> lp;
    for (size_t q : support_of(code.logical_x.x_bits))
      lp.push_back(vm_base + uint32_t(q));
    c.parity(chk_base + uint32_t(code.hx.rows()), lp);
  }
}

void emit_steane_prep(Circuit& c, const CssCode& code, AncillaBasis basis,
                      uint32_t block, uint32_t copy, uint32_t vm_base,
                      uint32_t chk_base, bool with_resets) {
  size_t n = code.n;
  if (basis == AncillaBasis::plus_l && !(code.hz == code.hx))
    throw std::invalid_argument("|+_L> preparation needs a self-dual code");
  if (with_resets)
    for (size_t i = 0; i < n; i++) c.reset(block + uint32_t(i));
  emit_encoder(c, code, block, NoiseRole::prep);
  if (basis == AncillaBasis::plus_l) {
    for (size_t i = 0; i < n; i++)
      c.gate1(GateKind::H, block + uint32_t(i), NoiseRole::prep);
  }
  emit_steane_verify(c, code, basis, block, copy, vm_base, chk_base,
                     with_resets);
}

Circuit build_steane_ancilla_prep(const CssCode& code, AncillaBasis basis) {
  Circuit c;
  Register block = c.add_qreg("block", uint32_t(code.n));
  Register copy = c.add_qreg("copy", uint32_t(code.n));
  Register vm = c.add_creg("vm", uint32_t(code.n));
  size_t rows =
      basis == AncillaBasis::zero_l ? code.hz.rows() : code.hx.rows();
  Register chk = c.add_creg("chk", uint32_t(rows + 1));
  emit_steane_prep(c, code, basis, block.start, copy.start, vm.start,
                   chk.start, false);
  return c;
}

PrepChecks steane_prep_checks(const CssCode& code, AncillaBasis basis,
                              const std::vector<uint8_t>& raw_bits) {
  const BinaryMatrix& h = basis == AncillaBasis::zero_l ? code.hz : code.hx;
  const BitVec& lsup = basis == AncillaBasis::zero_l ? code.logical_z.z_bits
                                                     : code.logical_x.x_bits;
  BitVec m(code.n);
  for (size_t i = 0; i < code.n; i++) m.set(i, raw_bits[i]);
  PrepChecks out;
  out.syndrome = h.mul_vec(m);
  out.logical_parity = lsup.dot(m);
  return out;
}

void emit_steane_extraction(Circuit& c, const CssCode& code, uint32_t data,
                            uint32_t anc, StabType type, uint32_t m_base,
                            uint32_t syn_base) {
  size_t n = code.n;
  if (type == StabType::Z) {
    for (size_t i = 0; i < n; i++)
      c.cx(data + uint32_t(i), anc + uint32_t(i), NoiseRole::coupling);
    for (size_t i = 0; i < n; i++)
      c.measure(anc + uint32_t(i), m_base + uint32_t(i), NoiseRole::readout);
    for (size_t r = 0; r < code.hz.rows(); r++) {
      std::vector<uint32_t> ins;
      for (size_t q : support_of(code.hz.row(r)))
        ins.push_back(m_base + uint32_t(q));
      c.parity(syn_base + uint32_t(r), ins);
    }
  } else {
    for (size_t i = 0; i < n; i++)
      c.cx(anc + uint32_t(i), data + uint32_t(i), NoiseRole::coupling);
    for (size_t i = 0; i < n; i++) {
      c.gate1(GateKind::H, anc + uint32_t(i), NoiseRole::readout);
      c.measure(anc + uint32_t(i), m_base + uint32_t(i), NoiseRole::readout);
    }
    for (size_t r = 0; r < code.hx.rows(); r++) {
      std::vector<uint32_t> ins;
      for (size_t q : support_of(code.hx.row(r)))
        ins.push_back(m_base + uint32_t(q));
      c.parity(syn_base + uint32_t(r), ins);
    }
  }
}

Circuit schedule_cycle(const CssCode& code, const SchedulerConfig& config) {
  config.check();
  size_t n = code.n;
  size_t rz = code.hz.rows(), rx = code.hx.rows();
  size_t n_stabs = rz + rx;
  size_t v = size_t(config.verify);

  Circuit c;
  c.add_qreg("data", uint32_t(n));

  std::vector<uint32_t> cat_offsets;
  std::vector<size_t> weights;
  uint32_t anc0 = 0, zanc = 0, zver = 0, xanc = 0, xver = 0;
  if (config.mode == ExtractionMode::standard) {
    anc0 = c.add_qreg("anc", uint32_t(n_stabs)).start;
  } else if (config.mode == ExtractionMode::cat) {
    for (size_t s = 0; s < n_stabs; s++) {
      StabType t = s < rz ? StabType::Z : StabType::X;
      size_t idx = s < rz ? s : s - rz;
      size_t w = support_of(stab_row(code, idx, t)).size();
      weights.push_back(w);
      cat_offsets.push_back(
          c.add_qreg("cat" + std::to_string(s), uint32_t(w + v)).start);
    }
  } else {
    zanc = c.add_qreg("zanc", uint32_t(n)).start;
    zver = c.add_qreg("zver", uint32_t(n)).start;
    xanc = c.add_qreg("xanc", uint32_t(n)).start;
    xver = c.add_qreg("xver", uint32_t(n)).start;
  }

  for (int r = 0; r < config.rounds; r++) {
    std::string rs = std::to_string(r);
    Register syn = c.add_creg("syn" + rs, uint32_t(n_stabs));
    Register cor = c.add_creg("cor" + rs, uint32_t(2 * n));
    c.tick();

    auto emit_decode = [&](uint8_t scope, std::vector<uint32_t> in_bits,
                           uint32_t out_base,
                           std::vector<uint32_t> valid_bits) {
      Instruction i;
      i.kind = InstrKind::decode;
      i.stable = config.stable_recovery;
      i.scope = scope;
      i.in_bits = std::move(in_bits);
      i.valid_bits = std::move(valid_bits);
      i.out_base = int32_t(out_base);
      c.instructions.push_back(std::move(i));
    };
    auto emit_x_corrections = [&]() {
      for (size_t q = 0; q < n; q++)
        c.cpauli(PauliKind::X, uint32_t(q), cor.start + uint32_t(q));
    };
    auto emit_z_corrections = [&]() {
      for (size_t q = 0; q < n; q++)
        c.cpauli(PauliKind::Z, uint32_t(q), cor.start + uint32_t(n + q));
    };
    std::vector<uint32_t> z_syn_bits, x_syn_bits;
    for (size_t s = 0; s < rz; s++) z_syn_bits.push_back(syn.start + s);
    for (size_t s = 0; s < rx; s++) x_syn_bits.push_back(syn.start + rz + s);

    std::vector<uint32_t> z_valid, x_valid;

    auto extract_family = [&](StabType type) {
      size_t count = type == StabType::Z ? rz : rx;
      for (size_t idx = 0; idx < count; idx++) {
        size_t s = type == StabType::Z ? idx : rz + idx;
        uint32_t syn_bit = syn.start + uint32_t(s);
        if (config.mode == ExtractionMode::standard) {
          uint32_t a = anc0 + uint32_t(s);
          c.reset(a);
          auto support = support_of(stab_row(code, idx, type));
          if (type == StabType::Z) {
            for (size_t q : support) c.cx(uint32_t(q), a, NoiseRole::coupling);
            c.measure(a, syn_bit, NoiseRole::readout);
          } else {
            c.gate1(GateKind::H, a, NoiseRole::prep);
            for (size_t q : support) c.cx(a, uint32_t(q), NoiseRole::coupling);
            c.gate1(GateKind::H, a, NoiseRole::readout);
            c.measure(a, syn_bit, NoiseRole::readout);
          }
        } else if (config.mode == ExtractionMode::cat) {
          size_t w = weights[s];
          Register ver = c.add_creg("ver" + rs + "_" + std::to_string(s),
                                    uint32_t(v));
          Register m =
              c.add_creg("m" + rs + "_" + std::to_string(s), uint32_t(w));
          CatPlacement at{0, cat_offsets[s], ver.start, m.start, syn_bit};
          emit_cat_extraction(c, code, idx, type, v, at, true);
          auto& valid = type == StabType::Z ? z_valid : x_valid;
          for (size_t j = 0; j < v; j++) valid.push_back(ver.start + j);
        } else {
          // steane: one transversal readout covers the whole family; emit
          // on the first index only.
          if (idx != 0) continue;
          bool is_z = type == StabType::Z;
          uint32_t block = is_z ? zanc : xanc;
          uint32_t copyb = is_z ? zver : xver;
          size_t rows = is_z ? rz : rx;
          Register vm = c.add_creg((is_z ? "zvm" : "xvm") + rs, uint32_t(n));
          Register chk =
              c.add_creg((is_z ? "zchk" : "xchk") + rs, uint32_t(rows + 1));
          Register am = c.add_creg((is_z ? "zm" : "xm") + rs, uint32_t(n));
          emit_steane_prep(c, code,
                           is_z ? AncillaBasis::plus_l : AncillaBasis::zero_l,
                           block, copyb, vm.start, chk.start, true);
          emit_steane_extraction(c, code, 0, block, type, am.start,
                                 is_z ? z_syn_bits[0] : x_syn_bits[0]);
          auto& valid = is_z ? z_valid : x_valid;
          for (size_t j = 0; j <= rows; j++) valid.push_back(chk.start + j);
        }
      }
    };

    extract_family(StabType::Z);
    if (config.readout == ReadoutPolicy::sequential) {
      emit_decode(1, z_syn_bits, cor.start, z_valid);
      emit_x_corrections();
    }
    extract_family(StabType::X);
    if (config.readout == ReadoutPolicy::sequential) {
      emit_decode(2, x_syn_bits, cor.start + uint32_t(n), x_valid);
      emit_z_corrections();
    } else {
      std::vector<uint32_t> all_bits = z_syn_bits;
      all_bits.insert(all_bits.end(), x_syn_bits.begin(), x_syn_bits.end());
      std::vector<uint32_t> all_valid = z_valid;
      all_valid.insert(all_valid.end(), x_valid.begin(), x_valid.end());
      emit_decode(0, all_bits, cor.start, all_valid);
      emit_x_corrections();
      emit_z_corrections();
    }
  }
  c.validate();
  return c;
}

}  // namespace hft
