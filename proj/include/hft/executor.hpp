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

#include <optional>
#include <vector>

#include "hft/builder.hpp"
#include "hft/circuit.hpp"
#include "hft/css.hpp"
#include "hft/noise.hpp"
#include "hft/tableau.hpp"

namespace hft {

// Single Pauli fault injected after the k-th executed instruction.
struct InjectedFault {
  size_t after_instr = 0;  // global executed-instruction counter value
  uint32_t qubit = 0;
  PauliKind pauli = PauliKind::I;
};

// Interprets circuits against a tableau while tracking the accumulated
// error frame (every sampled noise Pauli and feed-forward correction,
// conjugated through subsequent gates). The frame is the simulation ground
// truth: its data-block restriction is the current physical error.
class Executor {
 public:
  Executor(size_t n_qubits, size_t n_clbits, const CssCode* code,
           const NoiseModel& noise, uint64_t seed, uint64_t stream);

  void run(const Circuit& c);
  void run_range(const Circuit& c, size_t first, size_t last);

  StabilizerTableau& tableau() { return tab_; }
  const PauliString& frame() const { return frame_; }
  PauliString& frame() { return frame_; }
  std::vector<uint8_t>& clbits() { return clbits_; }
  size_t instr_count() const { return instr_count_; }

  std::optional<InjectedFault> inject;

  // Pauli-frame recovery: corrections are tracked here instead of applied;
  // measurement outcomes are reported as if they had been applied, and the
  // tracked frame is conjugated through every gate.
  bool frame_recovery = false;
  void track_correction(uint32_t qubit, bool x_part, bool z_part);
  const PauliString& recovery() const { return recovery_; }
  // Folds the tracked corrections into the physical state.
  void commit_recovery();

  // Syndrome of the current data-block error (ground truth; includes any
  // tracked-but-unapplied corrections).
  Syndrome frame_syndrome(uint32_t data_offset) const;

  // Effective error (noise frame + tracked corrections) on a block.
  PauliString frame_on_block(uint32_t offset, size_t len) const;

  void apply_error(uint32_t qubit, PauliKind p);

  // Clear per-circuit decode memory (keeps tableau/frame).
  void reset_decode_memory();

 private:
  void exec(const Instruction& i);
  void frame_gate(const Instruction& i);
  double scaled_p1(NoiseRole role) const;
  double scaled_p2(NoiseRole role) const;
  double scaled_pmeas(NoiseRole role) const;

  StabilizerTableau tab_;
  PauliString frame_;
  PauliString recovery_;
  std::vector<uint8_t> clbits_;
  std::vector<uint8_t> pending_flip_;
  const CssCode* code_;
  NoiseModel noise_;
  size_t instr_count_ = 0;
  // DECODES memory: previous trusted syndrome per scope (0/1/2).
  std::optional<BitVec> prev_syndrome_[3];
  std::optional<BitVec> last_trusted_[3];
};

// Per-round record assembled by the cycle runner.
struct RoundRecord {
  Syndrome observed;       // assembled syndrome (post verification gating)
  Syndrome truth;          // frame-derived syndrome at readout time
  bool z_accepted = true;  // family-level verification outcome
  bool x_accepted = true;
  std::vector<uint8_t> stab_accepted;  // per-stabilizer (cat mode)
};

struct ShotStats {
  size_t prep_tasks = 0;       // verified-preparation tasks attempted
  size_t prep_successes = 0;   // tasks verified within the attempt budget
  size_t prep_attempts = 0;    // total attempts across tasks
  size_t verification_failures = 0;
  size_t swaps = 0;
  size_t fallbacks = 0;  // steane prep exhausted without swap
  size_t cat_extractions = 0;
  size_t cat_accepted = 0;
  size_t cat_accepted_corrupt = 0;  // accepted with a broken core cat
  size_t syn_bits = 0;              // accepted syndrome bits compared
  size_t syn_bits_wrong = 0;
};

struct ShotOutcome {
  bool failed = false;  // logical Z readout flipped after final perfect decode
  std::vector<RoundRecord> rounds;
  ShotStats stats;
  // Data-block error after the noisy rounds, before the final perfect
  // decode (feed-forward corrections already folded in).
  PauliString post_rounds_data_error;
};

struct WorkloadSpec {
  enum class Kind { memory, rb, t_heavy } kind = Kind::memory;
  int depth = 0;
  double t_density = 0.0;
};

struct PrepReport {
  bool accepted = false;
  int attempts_used = 0;
  bool used_swap = false;
  bool fell_back = false;
};

// Outcome of one verified operation (ancilla preparation or extraction):
// an unaccepted syndrome is flagged unreliable and excluded from decoding.
struct ExtractionOutcome {
  Syndrome syndrome;
  bool accepted = false;
  int attempts_used = 0;
  double prep_success_rate = 0.0;
  int verification_failures = 0;
  bool used_swap = false;
  bool fell_back = false;
};

// Standalone verified-preparation driver on a two-block harness: repeats
// prepare+verify up to max_attempts, correcting and re-verifying once when
// the checks identify a correctable error. On exhaustion the outcome
// reports used_swap or fell_back per the policy.
ExtractionOutcome run_prep_with_policy(const CssCode& code, AncillaBasis basis,
                                       int max_attempts, bool swap_policy,
                                       const NoiseModel& noise, uint64_t seed,
                                       uint64_t stream = 0);

// Procedural multi-round driver: encodes |0_L>, runs T rounds of the
// configured extraction with retry policies and feed-forward recovery, and
// judges failure against the tableau after a final noiseless decode.
class CycleRunner {
 public:
  CycleRunner(const CssCode& code, const SchedulerConfig& config,
              const NoiseModel& noise, uint64_t seed);

  ShotOutcome run_shot(uint64_t shot, const WorkloadSpec& workload,
                       const std::optional<InjectedFault>& fault = {});

  ShotOutcome run_memory_shot(uint64_t shot) {
    return run_shot(shot, WorkloadSpec{});
  }

  // Width of the full (flat) cycle circuit, for resource reporting.
  size_t total_qubits() const { return layout_qubits_; }
  size_t ancilla_qubits() const { return layout_qubits_ - code_.n; }

 private:
  void build_layout();
  void build_segments();
  // Runs one extraction round; returns the assembled record.
  RoundRecord run_round(Executor& ex, int round);
  PrepReport run_steane_prep(Executor& ex, AncillaBasis basis);
  // Cat prep with retries; returns acceptance and whether the accepted core
  // carries a broken X pattern (frame inspected at coupling time).
  struct CatPrep {
    bool accepted = false;
    bool corrupt = false;
  };
  CatPrep run_cat_prep(Executor& ex, size_t stab);

  const CssCode& code_;
  SchedulerConfig cfg_;
  NoiseModel noise_;
  uint64_t seed_;
  size_t layout_qubits_ = 0;
  size_t layout_clbits_ = 0;

  // Register layout (absolute offsets), mirroring schedule_cycle.
  uint32_t data_ = 0;
  std::vector<uint32_t> cat_offs_;
  std::vector<size_t> weights_;
  std::vector<StabType> types_;
  std::vector<size_t> fam_index_;
  uint32_t anc_ = 0;  // standard
  uint32_t zanc_ = 0, zver_ = 0, xanc_ = 0, xver_ = 0;

  uint32_t orig_data_ = 0, orig_zanc_ = 0, orig_xanc_ = 0;

  // Prebuilt instrumented segments (rebuilt if a swap exchanges registers).
  Circuit encode_seg_;
  std::vector<Circuit> cat_prep_seg_;    // per stabilizer
  std::vector<Circuit> cat_couple_seg_;  // per stabilizer
  std::vector<Circuit> std_seg_;         // per stabilizer
  Circuit steane_prep_z_, steane_prep_x_;
  Circuit steane_verify_z_, steane_verify_x_;
  Circuit steane_extract_z_, steane_extract_x_;
  Circuit swap_seg_z_, swap_seg_x_;
  Circuit rb_layers_[4];  // logical X, Z, H, S transversal layers
  Circuit t_noise_layer_;
  Circuit background_seg_;

  // Clbit map used by segments (fixed window, reused per round).
  uint32_t c_syn_ = 0, c_ver_ = 0, c_m_ = 0, c_vm_ = 0, c_am_ = 0, c_chk_ = 0;

  ShotStats* stats_scratch_ = nullptr;

  // Decode policy state lives in the runner (procedural recovery).
  friend struct RunnerTestPeek;
};

// Weight of the residual error on the data block modulo the stabilizer
// group (minimum over the full group coset).
size_t residual_weight(const CssCode& code, const PauliString& data_error);

}  // namespace hft
