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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hft/executor.hpp"

using namespace hft;

namespace {

SchedulerConfig config_for(ExtractionMode mode) {
  SchedulerConfig cfg;
  cfg.mode = mode;
  cfg.verify = 2;
  cfg.rounds = 1;
  cfg.stable_recovery = false;  // immediate decode for containment analysis
  return cfg;
}

// Executes one noiseless round and counts the executor instructions, so
// fault locations can be enumerated.
size_t count_round_instructions(const CssCode& code,
                                const SchedulerConfig& cfg) {
  CycleRunner runner(code, cfg, NoiseModel::noiseless(), 5);
  // Instruction counting happens through a probe fault that never fires.
  InjectedFault probe{size_t(-1), 0, PauliKind::I};
  (void)probe;
  // Run once and read the executor count via a fault at a huge index: the
  // count equals the number of instructions executed in the stream.
  // run_shot doesn't expose the executor, so probe by bisection instead:
  // a fault injected at index k fires iff k <= total executed.
  size_t lo = 0, hi = 1 << 20;
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    CycleRunner r2(code, cfg, NoiseModel::noiseless(), 5);
    ShotOutcome o =
        r2.run_shot(0, WorkloadSpec{}, InjectedFault{mid, 0, PauliKind::X});
    // X on data qubit 0 always leaves a detectable residue unless the run
    // ended before the fault could fire (final decode cleans weight-1, so
    // judge by the post-round error instead).
    bool fired = o.post_rounds_data_error.weight() > 0 ||
                 o.rounds[0].observed.any() || o.failed;
    if (fired)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("noiseless rounds: all-zero syndromes, no failure, any mode") {
  CssCode code = steane_code();
  for (ExtractionMode mode : {ExtractionMode::standard, ExtractionMode::cat,
                              ExtractionMode::steane}) {
    SchedulerConfig cfg = config_for(mode);
    cfg.rounds = 2;
    CycleRunner runner(code, cfg, NoiseModel::noiseless(), 7);
    ShotOutcome o = runner.run_memory_shot(0);
    CHECK_FALSE(o.failed);
    for (const auto& r : o.rounds) {
      CHECK_FALSE(r.observed.any());
      CHECK(r.z_accepted);
      CHECK(r.x_accepted);
    }
    CHECK(o.stats.syn_bits_wrong == 0);
    CHECK(o.post_rounds_data_error.is_identity());
  }
}

TEST_CASE("injected weight-1 data error is corrected, not a failure") {
  CssCode code = steane_code();
  for (ExtractionMode mode : {ExtractionMode::standard, ExtractionMode::cat,
                              ExtractionMode::steane}) {
    SchedulerConfig cfg = config_for(mode);
    cfg.rounds = 2;
    CycleRunner runner(code, cfg, NoiseModel::noiseless(), 8);
    // Fault on data qubit 4 right after encoding (instruction index = size
    // of the encoder stream = 12 for this encoder).
    ShotOutcome o = runner.run_shot(0, WorkloadSpec{},
                                    InjectedFault{12, 4, PauliKind::X});
    CHECK_FALSE(o.failed);
    CHECK(o.rounds[0].observed.z_bits.any());
  }
}

TEST_CASE("fault containment: cat and steane contain, standard spreads") {
  CssCode code = steane_code();

  // The residual is measured after the extraction round with agreement-gated
  // recovery: a first-sighting syndrome defers its correction, so the
  // measurement captures what the extraction itself left on the data.
  auto residuals_over_faults = [&](ExtractionMode mode) {
    SchedulerConfig cfg = config_for(mode);
    cfg.stable_recovery = true;
    CycleRunner probe(code, cfg, NoiseModel::noiseless(), 5);
    size_t total = count_round_instructions(code, cfg);
    size_t max_res = 0;
    size_t n_data = code.n;
    size_t n_qubits = probe.total_qubits();
    for (size_t k = 0; k <= total; k++) {
      for (uint32_t q = uint32_t(n_data); q < n_qubits; q++) {  // ancillas
        for (PauliKind p : {PauliKind::X, PauliKind::Y, PauliKind::Z}) {
          CycleRunner runner(code, cfg, NoiseModel::noiseless(), 5);
          ShotOutcome o =
              runner.run_shot(0, WorkloadSpec{}, InjectedFault{k, q, p});
          size_t w = residual_weight(code, o.post_rounds_data_error);
          max_res = std::max(max_res, w);
        }
      }
    }
    return max_res;
  };

  // Exhaustive over all (instruction boundary, ancilla qubit, Pauli): the
  // verified extractions never leave more than one data error behind.
  CHECK(residuals_over_faults(ExtractionMode::cat) <= 1);
  CHECK(residuals_over_faults(ExtractionMode::steane) <= 1);
  // The bare method has at least one spreading location.
  CHECK(residuals_over_faults(ExtractionMode::standard) >= 2);
}

TEST_CASE("cat verification soundness over preparation faults") {
  CssCode code = steane_code();
  SchedulerConfig cfg = config_for(ExtractionMode::cat);
  cfg.stable_recovery = true;
  CycleRunner probe(code, cfg, NoiseModel::noiseless(), 5);
  size_t total = count_round_instructions(code, cfg);
  size_t n_qubits = probe.total_qubits();
  for (size_t k = 0; k <= total; k++) {
    for (uint32_t q = 7; q < n_qubits; q++) {
      CycleRunner runner(code, cfg, NoiseModel::noiseless(), 5);
      ShotOutcome o =
          runner.run_shot(0, WorkloadSpec{}, InjectedFault{k, q, PauliKind::X});
      bool all_accepted = true;
      for (uint8_t a : o.rounds[0].stab_accepted) all_accepted &= a != 0;
      size_t w = residual_weight(code, o.post_rounds_data_error);
      // Detected (some stabilizer's cat retried/rejected) or contained.
      if (all_accepted) CHECK(w <= 1);
    }
  }
}

TEST_CASE("steane prep retry heals injected prep faults") {
  CssCode code = steane_code();
  SchedulerConfig cfg = config_for(ExtractionMode::steane);
  CycleRunner runner(code, cfg, NoiseModel::noiseless(), 5);
  // X fault on the Z-ancilla block early in its preparation: verification
  // either corrects it in place or a retry replaces the block; the round
  // proceeds with a clean ancilla and no data damage.
  ShotOutcome o = runner.run_shot(0, WorkloadSpec{},
                                  InjectedFault{20, 8, PauliKind::X});
  CHECK_FALSE(o.failed);
  CHECK(residual_weight(code, o.post_rounds_data_error) <= 1);
}

TEST_CASE("forced exhaustion without swap falls back to bare extraction") {
  CssCode code = steane_code();
  SchedulerConfig cfg = config_for(ExtractionMode::steane);
  cfg.swap_policy = false;
  cfg.max_prep_attempts = 2;
  // Make every preparation fail: logical-parity-violating measurement flips
  // cannot be emulated noiselessly, so use a noise model with certain
  // readout flips on prep measurements only.
  NoiseModel certain = NoiseModel::noiseless();
  certain.p_meas = 1.0;
  certain.enabled = ch_meas;
  certain.binding.name = "test";
  certain.binding.prep = 1.0;
  certain.binding.readout = 0.0;  // keep syndrome readout clean
  certain.binding.background = 0.0;
  CycleRunner runner(code, cfg, certain, 5);
  ShotOutcome o = runner.run_memory_shot(0);
  CHECK(o.stats.fallbacks > 0);
  CHECK(o.stats.prep_successes == 0);
  CHECK_FALSE(o.failed);  // bare extraction still yields usable syndromes
}

TEST_CASE("swap policy engages on exhaustion and the shot completes") {
  CssCode code = steane_code();
  SchedulerConfig cfg = config_for(ExtractionMode::steane);
  cfg.swap_policy = true;
  cfg.max_prep_attempts = 2;
  NoiseModel certain = NoiseModel::noiseless();
  certain.p_meas = 1.0;
  certain.enabled = ch_meas;
  certain.binding.name = "test";
  certain.binding.prep = 1.0;
  certain.binding.readout = 0.0;
  certain.binding.background = 0.0;
  CycleRunner runner(code, cfg, certain, 5);
  ShotOutcome o = runner.run_memory_shot(0);
  CHECK(o.stats.swaps > 0);
  CHECK_FALSE(o.failed);
  // Subsequent shots restore the canonical layout.
  ShotOutcome o2 = runner.run_memory_shot(1);
  CHECK(o2.stats.swaps > 0);
}

TEST_CASE("run_prep_with_policy") {
  CssCode code = steane_code();

  // Noiseless: first attempt verifies.
  ExtractionOutcome ok = run_prep_with_policy(
      code, AncillaBasis::zero_l, 3, false, NoiseModel::noiseless(), 4);
  CHECK(ok.accepted);
  CHECK(ok.attempts_used == 1);
  CHECK(ok.prep_success_rate == 1.0);
  CHECK(ok.verification_failures == 0);

  // Forced failure every attempt (parity check trips deterministically):
  // without the swap policy this is the prep-exhausted signal.
  NoiseModel certain = NoiseModel::noiseless();
  certain.p_meas = 1.0;
  certain.enabled = ch_meas;
  certain.binding.prep = 1.0;
  certain.binding.readout = 0.0;
  certain.binding.background = 0.0;
  ExtractionOutcome bad = run_prep_with_policy(code, AncillaBasis::zero_l, 3,
                                               false, certain, 4);
  CHECK_FALSE(bad.accepted);
  CHECK(bad.attempts_used == 3);
  CHECK(bad.fell_back);
  CHECK_FALSE(bad.used_swap);

  ExtractionOutcome swapped = run_prep_with_policy(code, AncillaBasis::plus_l,
                                                   2, true, certain, 4);
  CHECK_FALSE(swapped.accepted);
  CHECK(swapped.used_swap);

  CHECK_THROWS_AS(run_prep_with_policy(code, AncillaBasis::zero_l, 0, false,
                                       NoiseModel::noiseless(), 4),
                  std::invalid_argument);
}

TEST_CASE("noiseless prep reports one attempt and full success") {
  CssCode code = steane_code();
  SchedulerConfig cfg = config_for(ExtractionMode::steane);
  cfg.max_prep_attempts = 3;
  CycleRunner runner(code, cfg, NoiseModel::noiseless(), 5);
  ShotOutcome o = runner.run_memory_shot(0);
  CHECK(o.stats.prep_tasks == 2);  // one Z block, one X block
  CHECK(o.stats.prep_attempts == 2);
  CHECK(o.stats.prep_successes == 2);
  CHECK(o.stats.verification_failures == 0);
}

TEST_CASE("pauli-frame recovery matches applied recovery") {
  CssCode code = steane_code();
  for (ExtractionMode mode : {ExtractionMode::standard, ExtractionMode::cat,
                              ExtractionMode::steane}) {
    SchedulerConfig a = config_for(mode);
    a.rounds = 4;
    a.stable_recovery = true;
    SchedulerConfig b = a;
    b.pauli_frame_recovery = true;
    NoiseModel noise = NoiseModel::proportional(3e-3);
    noise.binding = NoiseBinding::calibrated();
    int mismatches = 0;
    for (uint64_t shot = 0; shot < 200; shot++) {
      CycleRunner ra(code, a, noise, 99);
      CycleRunner rb(code, b, noise, 99);
      bool fa = ra.run_memory_shot(shot).failed;
      bool fb = rb.run_memory_shot(shot).failed;
      mismatches += fa != fb;
    }
    // Identical seeds and identical physics; recovery bookkeeping must not
    // change outcomes.
    CHECK(mismatches == 0);
  }
}

TEST_CASE("frame ground truth agrees with the tableau") {
  CssCode code = steane_code();
  SchedulerConfig cfg = config_for(ExtractionMode::standard);
  cfg.rounds = 3;
  NoiseModel noise = NoiseModel::proportional(5e-3);
  CycleRunner runner(code, cfg, noise, 123);
  // Failures judged by the tableau; the frame-based post-round residual
  // must decode to exactly the failure the tableau reports.
  size_t checked = 0;
  for (uint64_t shot = 0; shot < 500; shot++) {
    ShotOutcome o = runner.run_memory_shot(shot);
    PauliString res = o.post_rounds_data_error;
    PauliString corr = code.decode(code.syndrome_of(res));
    PauliString after = corr * res;
    bool frame_says_failed = !after.x_bits.dot(code.logical_z.z_bits) == false;
    CHECK(frame_says_failed == o.failed);
    checked++;
  }
  CHECK(checked == 500);
}

TEST_CASE("rb workload with depth 0 reduces to memory exactly") {
  CssCode code = steane_code();
  SchedulerConfig cfg = config_for(ExtractionMode::cat);
  cfg.rounds = 3;
  NoiseModel noise = NoiseModel::proportional(2e-3);
  WorkloadSpec mem;
  WorkloadSpec rb0;
  rb0.kind = WorkloadSpec::Kind::rb;
  rb0.depth = 0;
  for (uint64_t shot = 0; shot < 100; shot++) {
    CycleRunner ra(code, cfg, noise, 7);
    CycleRunner rb(code, cfg, noise, 7);
    ShotOutcome oa = ra.run_shot(shot, mem);
    ShotOutcome ob = rb.run_shot(shot, rb0);
    CHECK(oa.failed == ob.failed);
    REQUIRE(oa.rounds.size() == ob.rounds.size());
    for (size_t r = 0; r < oa.rounds.size(); r++)
      CHECK(oa.rounds[r].observed == ob.rounds[r].observed);
  }
}

TEST_CASE("rb workload runs and never fails noiselessly") {
  CssCode code = steane_code();
  SchedulerConfig cfg = config_for(ExtractionMode::standard);
  cfg.rounds = 5;
  CycleRunner runner(code, cfg, NoiseModel::noiseless(), 9);
  WorkloadSpec rb;
  rb.kind = WorkloadSpec::Kind::rb;
  rb.depth = 12;
  for (uint64_t shot = 0; shot < 50; shot++) {
    ShotOutcome o = runner.run_shot(shot, rb);
    CHECK_FALSE(o.failed);
  }
}
