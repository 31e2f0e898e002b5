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
#include <string>
#include <vector>

#include "hft/builder.hpp"
#include "hft/css.hpp"
#include "hft/noise.hpp"
#include "hft/rng.hpp"

namespace hft {

// T x S observation matrix; hidden truth present only in evaluation mode.
struct SyndromeStream {
  size_t rounds = 0;
  size_t stabs = 0;
  std::vector<std::vector<uint8_t>> observations;  // [round][stab]
  std::optional<std::vector<std::vector<uint8_t>>> hidden_truth;
};

// Per-stabilizer 2-state chain: the hidden bit toggles with q_flip per
// round; each observation misreports it with r_obs.
struct HmmParams {
  double q_flip = 0.05;
  double r_obs = 0.1;
  double prior0 = 0.5;
};

struct TemporalDecision {
  std::vector<uint8_t> bits;       // length S
  std::vector<double> confidence;  // length S, in [0, 1]
  std::string method;
};

// Synthetic stream sampler (evaluation mode: truth retained).
SyndromeStream sample_stream(size_t rounds, size_t stabs,
                             const HmmParams& params, uint64_t seed,
                             uint64_t stream_index);

// Majority over a sliding window of the last min(W, t+1) observations.
// Even-split ties resolve to the previously reported bit (round 0: 0).
std::vector<TemporalDecision> majority_vote(const SyndromeStream& s,
                                            int window);

// Max-probability hidden path (log-space dynamic programming); per-round
// confidence is the normalized path posterior. Ties break toward state 0.
std::vector<TemporalDecision> viterbi_decode(const SyndromeStream& s,
                                             const HmmParams& params);

// Forward filtering: predict with q_flip, update with the observation
// likelihood, renormalize. Confidence is the posterior of the reported bit.
std::vector<TemporalDecision> bayes_filter(const SyndromeStream& s,
                                           const HmmParams& params);

// Stream-consumer acceptance policy: first round at which the method's
// confidence exceeds the threshold, per stabilizer (-1 if never).
std::vector<int> accept_when_confident(
    const std::vector<TemporalDecision>& per_round, double threshold);

struct MethodComparison {
  struct PerMethod {
    std::string method;
    double accuracy = 0.0;         // vs hidden truth, all rounds
    double mean_confidence = 0.0;
    std::vector<uint8_t> final_bits;
    std::vector<double> final_confidence;
  };
  std::vector<PerMethod> methods;
  std::vector<int> disagreement_rounds;
};

// Requires hidden truth; tabulates all three methods and flags rounds where
// they disagree.
MethodComparison compare_methods(const SyndromeStream& s,
                                 const HmmParams& params, int window);

// q_flip from the instrumented round circuit's noise-site budget on the
// stabilizer supports; r_obs from p_meas plus the ancilla-fault misreport
// rate measured by a short calibration run.
HmmParams fit_default_params(const CssCode& code, const SchedulerConfig& cfg,
                             const NoiseModel& noise, uint64_t seed,
                             int calib_shots = 10000, int calib_rounds = 4);

}  // namespace hft
