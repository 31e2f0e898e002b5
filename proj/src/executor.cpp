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

#include "hft/executor.hpp"

#include <cmath>
#include <stdexcept>

namespace hft {

Executor::Executor(size_t n_qubits, size_t n_clbits, const CssCode* code,
                   const NoiseModel& noise, uint64_t seed, uint64_t stream)
    : tab_(n_qubits, seed, stream),
      frame_(n_qubits),
      recovery_(n_qubits),
      clbits_(n_clbits, 0),
      pending_flip_(n_qubits, 0),
      code_(code),
      noise_(noise) {}

void Executor::track_correction(uint32_t q, bool x_part, bool z_part) {
  if (x_part) recovery_.x_bits.flip(q);
  if (z_part) recovery_.z_bits.flip(q);
}

void Executor::commit_recovery() {
  if (!recovery_.x_bits.any() && !recovery_.z_bits.any()) return;
  tab_.apply_pauli(recovery_);
  frame_.x_bits ^= recovery_.x_bits;
  frame_.z_bits ^= recovery_.z_bits;
  recovery_.x_bits.clear();
  recovery_.z_bits.clear();
}

double Executor::scaled_p1(NoiseRole role) const {
  return noise_.p1 * noise_.binding.scale(role);
}
double Executor::scaled_p2(NoiseRole role) const {
  return noise_.p2 * noise_.binding.scale(role);
}
double Executor::scaled_pmeas(NoiseRole role) const {
  return noise_.p_meas * noise_.binding.scale(role);
}

void Executor::apply_error(uint32_t q, PauliKind p) {
  if (p == PauliKind::I) return;
  PauliString e = PauliString::single(tab_.num_qubits(), q, p);
  tab_.apply_pauli(e);
  frame_.x_bits.set(q, frame_.x_bits.get(q) ^ (int(p) & 1));
  frame_.z_bits.set(q, frame_.z_bits.get(q) ^ ((int(p) >> 1) & 1));
}

namespace {
void conjugate_frame(PauliString& f, const Instruction& i) {
  switch (i.gate) {
    case GateKind::H: {
      bool xb = f.x_bits.get(i.q0), zb = f.z_bits.get(i.q0);
      f.x_bits.set(i.q0, zb);
      f.z_bits.set(i.q0, xb);
      break;
    }
    case GateKind::S:
      f.z_bits.set(i.q0, f.z_bits.get(i.q0) ^ f.x_bits.get(i.q0));
      break;
    case GateKind::CX:
      f.x_bits.set(i.q1, f.x_bits.get(i.q1) ^ f.x_bits.get(i.q0));
      f.z_bits.set(i.q0, f.z_bits.get(i.q0) ^ f.z_bits.get(i.q1));
      break;
    default: break;  // paulis commute with the frame pattern
  }
}
}  // namespace

void Executor::frame_gate(const Instruction& i) {
  conjugate_frame(frame_, i);
  if (frame_recovery) conjugate_frame(recovery_, i);
}

void Executor::reset_decode_memory() {
  for (int s = 0; s < 3; s++) {
    prev_syndrome_[s].reset();
    last_trusted_[s].reset();
  }
}

Syndrome Executor::frame_syndrome(uint32_t data_offset) const {
  PauliString e = frame_on_block(data_offset, code_->n);
  return code_->syndrome_of(e);
}

PauliString Executor::frame_on_block(uint32_t offset, size_t len) const {
  PauliString e(len);
  for (size_t i = 0; i < len; i++) {
    e.x_bits.set(i, frame_.x_bits.get(offset + i) ^
                        (frame_recovery && recovery_.x_bits.get(offset + i)));
    e.z_bits.set(i, frame_.z_bits.get(offset + i) ^
                        (frame_recovery && recovery_.z_bits.get(offset + i)));
  }
  return e;
}

void Executor::exec(const Instruction& i) {
  switch (i.kind) {
    case InstrKind::gate: {
      CliffordGate g;
      g.kind = i.gate;
      g.q0 = i.q0;
      g.q1 = i.q1;
      tab_.apply(g);
      frame_gate(i);
      break;
    }
    case InstrKind::measure: {
      bool bit = tab_.measure_z(i.q0);
      bit ^= pending_flip_[i.q0] != 0;
      // Report the outcome as if tracked corrections had been applied.
      if (frame_recovery) bit ^= recovery_.x_bits.get(i.q0);
      pending_flip_[i.q0] = 0;
      clbits_[i.cbit] = bit ? 1 : 0;
      break;
    }
    case InstrKind::reset:
      tab_.reset_qubit(i.q0);
      frame_.x_bits.set(i.q0, false);
      frame_.z_bits.set(i.q0, false);
      recovery_.x_bits.set(i.q0, false);
      recovery_.z_bits.set(i.q0, false);
      pending_flip_[i.q0] = 0;
      break;
    case InstrKind::noise1:
      apply_error(i.q0, sample_depolarizing_1q(scaled_p1(i.role), tab_.rng()));
      break;
    case InstrKind::noise2: {
      auto [a, b] = sample_depolarizing_2q(scaled_p2(i.role), tab_.rng());
      apply_error(i.q0, a);
      apply_error(i.q1, b);
      break;
    }
    case InstrKind::noise_m:
      if (sample_meas_flip(scaled_pmeas(i.role), tab_.rng()))
        pending_flip_[i.q0] ^= 1;
      break;
    case InstrKind::idle:
      apply_error(i.q0, sample_idle(i.dur_us, noise_.t1_us, noise_.t2_us,
                                    tab_.rng()));
      break;
    case InstrKind::cpauli:
      if (clbits_[i.cbit]) apply_error(i.q0, i.pauli);
      break;
    case InstrKind::parity: {
      uint8_t acc = 0;
      for (uint32_t b : i.in_bits) acc ^= clbits_[b];
      clbits_[i.out_base] = acc;
      break;
    }
    case InstrKind::decode: {
      if (!code_) throw std::invalid_argument("decode needs a bound code");
      size_t rz = code_->hz.rows(), rx = code_->hx.rows();
      size_t expect = i.scope == 0 ? rz + rx : (i.scope == 1 ? rz : rx);
      if (i.in_bits.size() != expect)
        throw std::invalid_argument("decode bit count mismatch");
      BitVec s(expect);
      for (size_t b = 0; b < expect; b++) s.set(b, clbits_[i.in_bits[b]]);
      bool trusted = true;
      for (uint32_t vb : i.valid_bits)
        if (clbits_[vb]) trusted = false;
      int sc = i.scope;
      if (trusted)
        last_trusted_[sc] = s;
      else if (last_trusted_[sc])
        s = *last_trusted_[sc];
      else
        s.clear();
      bool apply = true;
      if (i.stable) {
        BitVec prev =
            prev_syndrome_[sc] ? *prev_syndrome_[sc] : BitVec(expect);
        apply = prev == s;
        prev_syndrome_[sc] = s;
      }
      Syndrome syn;
      syn.z_bits = BitVec(rz);
      syn.x_bits = BitVec(rx);
      if (i.scope == 0) {
        for (size_t b = 0; b < rz; b++) syn.z_bits.set(b, s.get(b));
        for (size_t b = 0; b < rx; b++) syn.x_bits.set(b, s.get(rz + b));
      } else if (i.scope == 1) {
        syn.z_bits = s;
      } else {
        syn.x_bits = s;
      }
      PauliString corr =
          apply ? code_->decode(syn) : PauliString::identity(code_->n);
      size_t n = code_->n;
      if (i.scope == 0) {
        for (size_t q = 0; q < n; q++) {
          clbits_[i.out_base + q] = corr.x_bits.get(q);
          clbits_[i.out_base + n + q] = corr.z_bits.get(q);
        }
      } else if (i.scope == 1) {
        for (size_t q = 0; q < n; q++)
          clbits_[i.out_base + q] = corr.x_bits.get(q);
      } else {
        for (size_t q = 0; q < n; q++)
          clbits_[i.out_base + q] = corr.z_bits.get(q);
      }
      break;
    }
    case InstrKind::tick: break;
  }
}

void Executor::run_range(const Circuit& c, size_t first, size_t last) {
  for (size_t k = first; k < last; k++) {
    if (inject && instr_count_ == inject->after_instr) {
      apply_error(inject->qubit, inject->pauli);
      inject.reset();
    }
    exec(c.instructions[k]);
    instr_count_++;
  }
  if (inject && instr_count_ == inject->after_instr) {
    apply_error(inject->qubit, inject->pauli);
    inject.reset();
  }
}

void Executor::run(const Circuit& c) { run_range(c, 0, c.instructions.size()); }

size_t residual_weight(const CssCode& code, const PauliString& data_error) {
  return code.coset_weight(data_error);
}

ExtractionOutcome run_prep_with_policy(const CssCode& code, AncillaBasis basis,
                                       int max_attempts, bool swap_policy,
                                       const NoiseModel& noise, uint64_t seed,
                                       uint64_t stream) {
  if (max_attempts < 1)
    throw std::invalid_argument("max_attempts must be >= 1");
  size_t n = code.n;
  size_t rows =
      basis == AncillaBasis::zero_l ? code.hz.rows() : code.hx.rows();
  Circuit prep, verify;
  uint32_t block = 0, copy = uint32_t(n);
  uint32_t vm = 0, chk = uint32_t(n);
  emit_steane_prep(prep, code, basis, block, copy, vm, chk, true);
  emit_steane_verify(verify, code, basis, block, copy, vm, chk, true);
  prep.n_qubits = verify.n_qubits = uint32_t(2 * n);
  prep.n_clbits = verify.n_clbits = uint32_t(n + rows + 1);
  Circuit prep_n = instrument(prep, noise);
  Circuit verify_n = instrument(verify, noise);

  Executor ex(2 * n, n + rows + 1, &code, noise, seed, stream);
  ExtractionOutcome out;
  auto checks_pass = [&](BitVec* synd, bool* lp) {
    *synd = BitVec(rows);
    for (size_t j = 0; j < rows; j++) synd->set(j, ex.clbits()[chk + j]);
    *lp = ex.clbits()[chk + rows] != 0;
    return !synd->any() && !*lp;
  };
  for (int attempt = 0; attempt < max_attempts; attempt++) {
    ex.run(prep_n);
    out.attempts_used++;
    BitVec synd;
    bool lp;
    if (checks_pass(&synd, &lp)) {
      out.accepted = true;
      break;
    }
    out.verification_failures++;
    if (!lp && synd.any()) {
      Syndrome s;
      s.z_bits = basis == AncillaBasis::zero_l ? synd : BitVec(code.hz.rows());
      s.x_bits = basis == AncillaBasis::zero_l ? BitVec(code.hx.rows()) : synd;
      PauliString corr = code.decode(s);
      PauliString e(2 * n);
      for (size_t i = 0; i < n; i++) {
        e.x_bits.set(block + i, corr.x_bits.get(i));
        e.z_bits.set(block + i, corr.z_bits.get(i));
      }
      ex.tableau().apply_pauli(e);
      ex.frame().x_bits ^= e.x_bits;
      ex.frame().z_bits ^= e.z_bits;
      ex.run(verify_n);
      out.attempts_used++;
      if (checks_pass(&synd, &lp)) {
        out.accepted = true;
        break;
      }
      out.verification_failures++;
    }
  }
  if (!out.accepted) {
    if (swap_policy)
      out.used_swap = true;  // caller schedules the logical swap
    else
      out.fell_back = true;  // prep-exhausted: fall back to bare extraction
  }
  out.prep_success_rate = out.accepted ? 1.0 : 0.0;
  out.syndrome.z_bits = BitVec(code.hz.rows());
  out.syndrome.x_bits = BitVec(code.hx.rows());
  return out;
}

// ---------------------------------------------------------------------------
// CycleRunner

namespace {
std::vector<size_t> support_of(const BitVec& row) {
  std::vector<size_t> s;
  for (size_t i = 0; i < row.size(); i++)
    if (row.get(i)) s.push_back(i);
  return s;
}
}  // namespace

CycleRunner::CycleRunner(const CssCode& code, const SchedulerConfig& config,
                         const NoiseModel& noise, uint64_t seed)
    : code_(code), cfg_(config), noise_(noise), seed_(seed) {
  cfg_.check();
  build_layout();
  build_segments();
}

void CycleRunner::build_layout() {
  size_t n = code_.n;
  size_t rz = code_.hz.rows(), rx = code_.hx.rows();
  size_t n_stabs = rz + rx;
  size_t v = size_t(cfg_.verify);

  Circuit layout;
  data_ = layout.add_qreg("data", uint32_t(n)).start;
  for (size_t s = 0; s < n_stabs; s++) {
    types_.push_back(s < rz ? StabType::Z : StabType::X);
    fam_index_.push_back(s < rz ? s : s - rz);
  }
  if (cfg_.mode == ExtractionMode::standard) {
    anc_ = layout.add_qreg("anc", uint32_t(n_stabs)).start;
  } else if (cfg_.mode == ExtractionMode::cat) {
    for (size_t s = 0; s < n_stabs; s++) {
      size_t w =
          support_of(types_[s] == StabType::Z ? code_.hz.row(fam_index_[s])
                                              : code_.hx.row(fam_index_[s]))
              .size();
      weights_.push_back(w);
      cat_offs_.push_back(
          layout.add_qreg("cat" + std::to_string(s), uint32_t(w + v)).start);
    }
  } else {
    zanc_ = layout.add_qreg("zanc", uint32_t(n)).start;
    zver_ = layout.add_qreg("zver", uint32_t(n)).start;
    xanc_ = layout.add_qreg("xanc", uint32_t(n)).start;
    xver_ = layout.add_qreg("xver", uint32_t(n)).start;
    anc_ = layout.add_qreg("spare", 1).start;
  }
  layout_qubits_ = layout.n_qubits;
  orig_data_ = data_;
  orig_zanc_ = zanc_;
  orig_xanc_ = xanc_;

  size_t max_w = 1;
  for (size_t w : weights_) max_w = std::max(max_w, w);
  c_syn_ = 0;
  c_ver_ = uint32_t(n_stabs);
  c_m_ = c_ver_ + uint32_t(v);
  c_vm_ = c_m_ + uint32_t(max_w);
  c_am_ = c_vm_ + uint32_t(n);
  c_chk_ = c_am_ + uint32_t(n);
  layout_clbits_ = c_chk_ + std::max(rz, rx) + 1;
}

void CycleRunner::build_segments() {
  size_t n = code_.n;
  size_t rz = code_.hz.rows(), rx = code_.hx.rows();
  size_t n_stabs = rz + rx;
  size_t v = size_t(cfg_.verify);

  auto instrumented = [&](Circuit&& c) {
    c.n_qubits = uint32_t(layout_qubits_);
    c.n_clbits = uint32_t(layout_clbits_);
    return instrument(c, noise_);
  };
  auto bare = [&](Circuit&& c) {
    c.n_qubits = uint32_t(layout_qubits_);
    c.n_clbits = uint32_t(layout_clbits_);
    return std::move(c);
  };

  {
    Circuit enc;
    emit_encoder(enc, code_, data_, NoiseRole::prep);
    encode_seg_ = bare(std::move(enc));  // perfect initial encoding
  }

  std_seg_.clear();
  if (cfg_.mode == ExtractionMode::standard ||
      cfg_.mode == ExtractionMode::steane) {
    for (size_t s = 0; s < n_stabs; s++) {
      Circuit c;
      uint32_t a = cfg_.mode == ExtractionMode::standard ? anc_ + uint32_t(s)
                                                         : anc_;
      c.reset(a);
      auto support =
          support_of(types_[s] == StabType::Z ? code_.hz.row(fam_index_[s])
                                              : code_.hx.row(fam_index_[s]));
      if (types_[s] == StabType::Z) {
        for (size_t q : support)
          c.cx(data_ + uint32_t(q), a, NoiseRole::coupling);
        c.measure(a, c_syn_ + uint32_t(s));
      } else {
        c.gate1(GateKind::H, a, NoiseRole::prep);
        for (size_t q : support)
          c.cx(a, data_ + uint32_t(q), NoiseRole::coupling);
        c.gate1(GateKind::H, a, NoiseRole::readout);
        c.measure(a, c_syn_ + uint32_t(s));
      }
      std_seg_.push_back(instrumented(std::move(c)));
    }
  }

  cat_prep_seg_.clear();
  cat_couple_seg_.clear();
  if (cfg_.mode == ExtractionMode::cat) {
    for (size_t s = 0; s < n_stabs; s++) {
      size_t w = weights_[s];
      Circuit prep;
      for (size_t i = 0; i < w + v; i++)
        prep.reset(cat_offs_[s] + uint32_t(i));
      prep.gate1(GateKind::H, cat_offs_[s], NoiseRole::prep);
      for (size_t i = 0; i + 1 < w + v; i++)
        prep.cx(cat_offs_[s] + uint32_t(i), cat_offs_[s] + uint32_t(i + 1),
                NoiseRole::prep);
      for (size_t j = 0; j < v; j++) {
        prep.cx(cat_offs_[s], cat_offs_[s] + uint32_t(w + j), NoiseRole::prep);
        prep.measure(cat_offs_[s] + uint32_t(w + j), c_ver_ + uint32_t(j),
                     NoiseRole::prep);
      }
      cat_prep_seg_.push_back(instrumented(std::move(prep)));

      Circuit couple;
      auto support =
          support_of(types_[s] == StabType::Z ? code_.hz.row(fam_index_[s])
                                              : code_.hx.row(fam_index_[s]));
      for (size_t i = 0; i < w; i++) {
        uint32_t a = cat_offs_[s] + uint32_t(i);
        uint32_t d = data_ + uint32_t(support[i]);
        if (types_[s] == StabType::X) {
          couple.cx(a, d, NoiseRole::coupling);
        } else {
          couple.gate1(GateKind::H, a, NoiseRole::coupling);
          couple.cx(d, a, NoiseRole::coupling);
          couple.gate1(GateKind::H, a, NoiseRole::coupling);
        }
      }
      std::vector<uint32_t> m_bits;
      for (size_t i = 0; i < w; i++) {
        couple.gate1(GateKind::H, cat_offs_[s] + uint32_t(i),
                     NoiseRole::readout);
        couple.measure(cat_offs_[s] + uint32_t(i), c_m_ + uint32_t(i));
        m_bits.push_back(c_m_ + uint32_t(i));
      }
      couple.parity(c_syn_ + uint32_t(s), m_bits);
      cat_couple_seg_.push_back(instrumented(std::move(couple)));
    }
  }

  if (cfg_.mode == ExtractionMode::steane) {
    auto prep_of = [&](AncillaBasis basis, uint32_t block, uint32_t copy) {
      Circuit c;
      emit_steane_prep(c, code_, basis, block, copy, c_vm_, c_chk_, true);
      return instrumented(std::move(c));
    };
    auto verify_of = [&](AncillaBasis basis, uint32_t block, uint32_t copy) {
      Circuit c;
      emit_steane_verify(c, code_, basis, block, copy, c_vm_, c_chk_, true);
      return instrumented(std::move(c));
    };
    steane_prep_z_ = prep_of(AncillaBasis::plus_l, zanc_, zver_);
    steane_prep_x_ = prep_of(AncillaBasis::zero_l, xanc_, xver_);
    steane_verify_z_ = verify_of(AncillaBasis::plus_l, zanc_, zver_);
    steane_verify_x_ = verify_of(AncillaBasis::zero_l, xanc_, xver_);

    auto extract_of = [&](StabType type, uint32_t block) {
      Circuit c;
      emit_steane_extraction(
          c, code_, data_, block, type, c_am_,
          c_syn_ + (type == StabType::Z ? 0 : uint32_t(rz)));
      return instrumented(std::move(c));
    };
    steane_extract_z_ = extract_of(StabType::Z, zanc_);
    steane_extract_x_ = extract_of(StabType::X, xanc_);

    auto swap_of = [&](uint32_t block) {
      Circuit c;
      for (size_t i = 0; i < n; i++)
        c.cx(data_ + uint32_t(i), block + uint32_t(i), NoiseRole::coupling);
      for (size_t i = 0; i < n; i++)
        c.cx(block + uint32_t(i), data_ + uint32_t(i), NoiseRole::coupling);
      for (size_t i = 0; i < n; i++)
        c.cx(data_ + uint32_t(i), block + uint32_t(i), NoiseRole::coupling);
      return instrumented(std::move(c));
    };
    swap_seg_z_ = swap_of(zanc_);
    swap_seg_x_ = swap_of(xanc_);
  }

  {
    GateKind kinds[4] = {GateKind::X, GateKind::Z, GateKind::H, GateKind::S};
    for (int k = 0; k < 4; k++) {
      Circuit c;
      for (size_t i = 0; i < n; i++)
        c.gate1(kinds[k], data_ + uint32_t(i), NoiseRole::generic);
      rb_layers_[k] = instrumented(std::move(c));
    }
    Circuit tn;
    for (size_t i = 0; i < n; i++) {
      Instruction s;
      s.kind = InstrKind::noise1;
      s.q0 = s.q1 = data_ + uint32_t(i);
      s.role = NoiseRole::generic;
      tn.instructions.push_back(s);
    }
    t_noise_layer_ = bare(std::move(tn));

    Circuit bg;
    if (noise_.binding.background > 0.0 && !noise_.is_noiseless()) {
      for (size_t i = 0; i < n; i++) {
        Instruction s;
        s.kind = InstrKind::noise1;
        s.q0 = s.q1 = data_ + uint32_t(i);
        s.role = NoiseRole::background;
        bg.instructions.push_back(s);
      }
    }
    background_seg_ = bare(std::move(bg));
  }
}

CycleRunner::CatPrep CycleRunner::run_cat_prep(Executor& ex, size_t s) {
  CatPrep out;
  size_t v = size_t(cfg_.verify);
  for (int attempt = 0; attempt < cfg_.max_prep_attempts; attempt++) {
    stats_scratch_->prep_attempts++;
    ex.run(cat_prep_seg_[s]);
    bool ok = true;
    for (size_t j = 0; j < v; j++)
      if (ex.clbits()[c_ver_ + j]) ok = false;
    if (ok) {
      out.accepted = true;
      break;
    }
    stats_scratch_->verification_failures++;
  }
  if (out.accepted) {
    // Core integrity at coupling time. A single surviving flip propagates to
    // one data qubit, which the code corrects by design; the dangerous
    // accepted state is a pattern at least two away from both branches
    // (only reachable by two or more preparation faults).
    size_t w = weights_[s];
    PauliString core = ex.frame_on_block(cat_offs_[s], w);
    size_t flips = core.x_bits.popcount();
    out.corrupt = std::min(flips, w - flips) >= 2;
  }
  return out;
}

PrepReport CycleRunner::run_steane_prep(Executor& ex, AncillaBasis basis) {
  PrepReport rep;
  bool is_z = basis == AncillaBasis::plus_l;
  size_t rows = is_z ? code_.hx.rows() : code_.hz.rows();
  const Circuit& prep = is_z ? steane_prep_z_ : steane_prep_x_;
  const Circuit& verify = is_z ? steane_verify_z_ : steane_verify_x_;
  uint32_t block = is_z ? zanc_ : xanc_;

  auto read_checks = [&](BitVec* synd, bool* lp) {
    *synd = BitVec(rows);
    for (size_t j = 0; j < rows; j++)
      synd->set(j, ex.clbits()[c_chk_ + j]);
    *lp = ex.clbits()[c_chk_ + rows] != 0;
  };

  for (int attempt = 0; attempt < cfg_.max_prep_attempts; attempt++) {
    ex.run(prep);
    rep.attempts_used++;
    BitVec synd;
    bool lp;
    read_checks(&synd, &lp);
    if (!synd.any() && !lp) {
      rep.accepted = true;
      return rep;
    }
    stats_scratch_->verification_failures++;
    if (!lp && synd.any()) {
      // Correctable pattern: apply the lookup correction and re-verify once.
      Syndrome s;
      s.z_bits = is_z ? BitVec(code_.hz.rows()) : synd;
      s.x_bits = is_z ? synd : BitVec(code_.hx.rows());
      PauliString corr = code_.decode(s);
      PauliString e(layout_qubits_);
      for (size_t i = 0; i < code_.n; i++) {
        e.x_bits.set(block + i, corr.x_bits.get(i));
        e.z_bits.set(block + i, corr.z_bits.get(i));
      }
      ex.tableau().apply_pauli(e);
      ex.frame().x_bits ^= e.x_bits;
      ex.frame().z_bits ^= e.z_bits;
      ex.run(verify);
      rep.attempts_used++;
      read_checks(&synd, &lp);
      if (!synd.any() && !lp) {
        rep.accepted = true;
        return rep;
      }
      stats_scratch_->verification_failures++;
    }
  }
  return rep;
}

RoundRecord CycleRunner::run_round(Executor& ex, int round) {
  size_t rz = code_.hz.rows(), rx = code_.hx.rows();
  size_t n_stabs = rz + rx;
  RoundRecord rec;
  rec.stab_accepted.assign(n_stabs, 1);
  rec.observed.z_bits = BitVec(rz);
  rec.observed.x_bits = BitVec(rx);
  rec.observed.round = round;
  rec.truth.z_bits = BitVec(rz);
  rec.truth.x_bits = BitVec(rx);
  rec.truth.round = round;

  ex.run(background_seg_);

  auto read_family_bits = [&](StabType type) {
    size_t count = type == StabType::Z ? rz : rx;
    for (size_t idx = 0; idx < count; idx++) {
      size_t s = type == StabType::Z ? idx : rz + idx;
      bool bit = ex.clbits()[c_syn_ + s] != 0;
      if (type == StabType::Z)
        rec.observed.z_bits.set(idx, bit);
      else
        rec.observed.x_bits.set(idx, bit);
    }
  };

  auto run_family = [&](StabType type) {
    size_t count = type == StabType::Z ? rz : rx;
    if (cfg_.mode == ExtractionMode::steane) {
      AncillaBasis basis =
          type == StabType::Z ? AncillaBasis::plus_l : AncillaBasis::zero_l;
      stats_scratch_->prep_tasks++;
      PrepReport rep = run_steane_prep(ex, basis);
      stats_scratch_->prep_attempts += rep.attempts_used;
      stats_scratch_->prep_successes += rep.accepted ? 1 : 0;
      if (!rep.accepted && !cfg_.swap_policy) {
        // Preparation exhausted: fall back to bare-ancilla extraction.
        stats_scratch_->fallbacks++;
        for (size_t idx = 0; idx < count; idx++) {
          size_t s = type == StabType::Z ? idx : rz + idx;
          ex.run(std_seg_[s]);
        }
        read_family_bits(type);
        return;
      }
      ex.run(type == StabType::Z ? steane_extract_z_ : steane_extract_x_);
      read_family_bits(type);
      if (!rep.accepted) {
        // Unverified block was consumed; mark the family untrusted and
        // migrate the payload into the freshly measured register (the
        // logical swap), exchanging the block roles.
        if (type == StabType::Z) {
          rec.z_accepted = false;
          ex.run(swap_seg_z_);
          std::swap(data_, zanc_);
        } else {
          rec.x_accepted = false;
          ex.run(swap_seg_x_);
          std::swap(data_, xanc_);
        }
        stats_scratch_->swaps++;
        build_segments();
      }
      return;
    }
    for (size_t idx = 0; idx < count; idx++) {
      size_t s = type == StabType::Z ? idx : rz + idx;
      if (cfg_.mode == ExtractionMode::standard) {
        ex.run(std_seg_[s]);
      } else {
        stats_scratch_->prep_tasks++;
        stats_scratch_->cat_extractions++;
        CatPrep cp = run_cat_prep(ex, s);
        stats_scratch_->prep_successes += cp.accepted ? 1 : 0;
        if (cp.accepted) {
          stats_scratch_->cat_accepted++;
          if (cp.corrupt) stats_scratch_->cat_accepted_corrupt++;
        }
        rec.stab_accepted[s] = cp.accepted ? 1 : 0;
        ex.run(cat_couple_seg_[s]);
      }
    }
    read_family_bits(type);
  };

  run_family(StabType::Z);
  rec.truth.z_bits = ex.frame_syndrome(data_).z_bits;
  run_family(StabType::X);
  rec.truth.x_bits = ex.frame_syndrome(data_).x_bits;
  return rec;
}

ShotOutcome CycleRunner::run_shot(uint64_t shot, const WorkloadSpec& workload,
                                  const std::optional<InjectedFault>& fault) {
  size_t n = code_.n;
  size_t rz = code_.hz.rows(), rx = code_.hx.rows();
  ShotOutcome out;
  stats_scratch_ = &out.stats;

  // Restore the canonical register roles if a previous shot swapped them.
  if (data_ != orig_data_) {
    data_ = orig_data_;
    zanc_ = orig_zanc_;
    xanc_ = orig_xanc_;
    build_segments();
  }

  Executor ex(layout_qubits_, layout_clbits_, &code_, noise_, seed_, shot);
  ex.frame_recovery = cfg_.pauli_frame_recovery;
  ex.inject = fault;
  ex.run(encode_seg_);

  BitVec prev_syn_z(rz), prev_syn_x(rx);
  BitVec held_z(rz), held_x(rx);
  bool have_prev = false;

  std::vector<int> rb_seq;
  int gaps = std::max(1, cfg_.rounds - 1);
  auto layers_in_gap = [&](int g) {
    if (workload.kind != WorkloadSpec::Kind::rb || workload.depth <= 0)
      return 0;
    int d = workload.depth;
    return d / gaps + (g < d % gaps ? 1 : 0);
  };
  int t_layers_total =
      workload.kind == WorkloadSpec::Kind::t_heavy
          ? int(std::ceil(workload.t_density * workload.depth))
          : 0;
  auto t_layers_in_gap = [&](int g) {
    if (t_layers_total == 0) return 0;
    return t_layers_total / gaps + (g < t_layers_total % gaps ? 1 : 0);
  };

  auto apply_correction = [&](const PauliString& corr) {
    if (corr.is_identity()) return;
    if (cfg_.pauli_frame_recovery) {
      for (size_t i = 0; i < n; i++)
        ex.track_correction(data_ + uint32_t(i), corr.x_bits.get(i),
                            corr.z_bits.get(i));
      return;
    }
    PauliString e(layout_qubits_);
    for (size_t i = 0; i < n; i++) {
      e.x_bits.set(data_ + i, corr.x_bits.get(i));
      e.z_bits.set(data_ + i, corr.z_bits.get(i));
    }
    ex.tableau().apply_pauli(e);
    ex.frame().x_bits ^= e.x_bits;
    ex.frame().z_bits ^= e.z_bits;
  };

  auto effective_bits = [&](const RoundRecord& rec, StabType type) {
    size_t count = type == StabType::Z ? rz : rx;
    BitVec bits(count);
    for (size_t idx = 0; idx < count; idx++) {
      size_t s = type == StabType::Z ? idx : rz + idx;
      bool fam_ok = type == StabType::Z ? rec.z_accepted : rec.x_accepted;
      bool ok = rec.stab_accepted[s] && fam_ok;
      bool bit = type == StabType::Z ? rec.observed.z_bits.get(idx)
                                     : rec.observed.x_bits.get(idx);
      BitVec& held = type == StabType::Z ? held_z : held_x;
      if (ok) held.set(idx, bit);
      bits.set(idx, held.get(idx));
    }
    return bits;
  };

  auto decode_and_correct = [&](BitVec az, BitVec ax, bool z_part,
                                bool x_part) {
    bool apply = true;
    if (cfg_.stable_recovery) {
      bool zok = !z_part || (have_prev ? az == prev_syn_z : !az.any());
      bool xok = !x_part || (have_prev ? ax == prev_syn_x : !ax.any());
      apply = zok && xok;
    }
    if (z_part) prev_syn_z = az;
    if (x_part) prev_syn_x = ax;
    if (!apply) return;
    Syndrome s;
    s.z_bits = z_part ? az : BitVec(rz);
    s.x_bits = x_part ? ax : BitVec(rx);
    if (!s.any()) return;
    apply_correction(code_.decode(s));
  };

  for (int r = 0; r < cfg_.rounds; r++) {
    RoundRecord rec = run_round(ex, r);
    BitVec sz = effective_bits(rec, StabType::Z);
    BitVec sx = effective_bits(rec, StabType::X);
    if (cfg_.readout == ReadoutPolicy::sequential) {
      decode_and_correct(sz, sx, true, false);
      decode_and_correct(sz, sx, false, true);
    } else {
      decode_and_correct(sz, sx, true, true);
    }
    have_prev = true;

    for (size_t idx = 0; idx < rz; idx++) {
      if (rec.z_accepted && rec.stab_accepted[idx]) {
        out.stats.syn_bits++;
        if (rec.observed.z_bits.get(idx) != rec.truth.z_bits.get(idx))
          out.stats.syn_bits_wrong++;
      }
    }
    for (size_t idx = 0; idx < rx; idx++) {
      if (rec.x_accepted && rec.stab_accepted[rz + idx]) {
        out.stats.syn_bits++;
        if (rec.observed.x_bits.get(idx) != rec.truth.x_bits.get(idx))
          out.stats.syn_bits_wrong++;
      }
    }
    out.rounds.push_back(std::move(rec));

    if (r < cfg_.rounds - 1 || cfg_.rounds == 1) {
      int g = std::min(r, gaps - 1);
      for (int l = 0; l < layers_in_gap(g); l++) {
        uint32_t k = ex.tableau().rng().next_below(4);
        rb_seq.push_back(int(k));
        ex.run(rb_layers_[k]);
      }
      for (int l = 0; l < t_layers_in_gap(g); l++) ex.run(t_noise_layer_);
    }
  }

  out.post_rounds_data_error = ex.frame_on_block(data_, n);
  // Fold tracked corrections into the physical state before judging.
  ex.commit_recovery();

  // Final perfect round: noiseless decode, then the tableau is the ground
  // truth for the logical readout.
  Syndrome fin = ex.frame_syndrome(data_);
  if (fin.any()) {
    PauliString corr = code_.decode(fin);
    PauliString e(layout_qubits_);
    for (size_t i = 0; i < n; i++) {
      e.x_bits.set(data_ + i, corr.x_bits.get(i));
      e.z_bits.set(data_ + i, corr.z_bits.get(i));
    }
    ex.tableau().apply_pauli(e);
    ex.frame().x_bits ^= e.x_bits;
    ex.frame().z_bits ^= e.z_bits;
  }

  // Undo the logical layers noiselessly so the reference is |0_L> again.
  GateKind kinds[4] = {GateKind::X, GateKind::Z, GateKind::H, GateKind::S};
  for (auto it = rb_seq.rbegin(); it != rb_seq.rend(); ++it) {
    GateKind k = kinds[*it];
    int reps = k == GateKind::S ? 3 : 1;
    for (int rep = 0; rep < reps; rep++) {
      for (size_t i = 0; i < n; i++) {
        uint32_t q = data_ + uint32_t(i);
        ex.tableau().apply(CliffordGate::g1(k, q));
        if (k == GateKind::H) {
          bool xb = ex.frame().x_bits.get(q), zb = ex.frame().z_bits.get(q);
          ex.frame().x_bits.set(q, zb);
          ex.frame().z_bits.set(q, xb);
        } else if (k == GateKind::S) {
          ex.frame().z_bits.set(
              q, ex.frame().z_bits.get(q) ^ ex.frame().x_bits.get(q));
        }
      }
    }
  }

  PauliString zl(layout_qubits_);
  for (size_t i = 0; i < n; i++)
    zl.z_bits.set(data_ + i, code_.logical_z.z_bits.get(i));
  auto sign = ex.tableau().expectation(zl);
  out.failed = sign.has_value() && *sign == -1;
  stats_scratch_ = nullptr;
  return out;
}

}  // namespace hft
