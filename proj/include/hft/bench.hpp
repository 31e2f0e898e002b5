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

#include <json.hpp>

#include "hft/builder.hpp"
#include "hft/css.hpp"
#include "hft/executor.hpp"
#include "hft/noise.hpp"

namespace hft {

struct WilsonInterval {
  double rate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score 95% interval.
WilsonInterval estimate_rate(uint64_t failures, uint64_t trials);

struct ExperimentConfig {
  std::string code_id = "steane";
  SchedulerConfig scheduler;
  double p_phys = 1e-3;  // proportional shortcut (p2 = 10 p1, p_meas = 15 p1)
  std::optional<NoiseModel> noise;  // explicit model overrides p_phys
  std::string binding = "calibrated";    // "calibrated" or "circuit"
  uint64_t shots = 100000;
  WorkloadSpec workload;
  uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency

  NoiseModel resolve_noise() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

// Noise config schema: {p1, p2, p_meas, t1_us, t2_us,
//   gate_times: {g1_us, g2_us, meas_us}, channels: ["gate1", ...]}.
NoiseModel noise_from_json(const nlohmann::json& j);
nlohmann::json noise_to_json(const NoiseModel& m);

struct BenchResult {
  double p_phys = 0.0;
  double p_log = 0.0;      // failures / (shots * rounds)
  double fail_prob = 0.0;  // failures / shots
  double ci_low = 0.0, ci_high = 0.0;  // 95% on p_log
  uint64_t failures = 0;
  uint64_t shots = 0;
  int rounds = 0;
  size_t n_data = 0, n_anc = 0, n_total = 0;
  size_t width = 0, depth = 0;
  double wall_time_s = 0.0;
  double syndrome_fidelity = 1.0;
  double prep_attempt_success = 1.0;  // accepted attempts / attempts
  double prep_task_success = 1.0;     // verified tasks / tasks
  uint64_t prep_attempts = 0;
  uint64_t verification_failures = 0;
  uint64_t swaps = 0;
  double cat_accept_rate = 1.0;
  double cat_accepted_corrupt_rate = 0.0;

  nlohmann::json to_json() const;
};

BenchResult run_memory(const ExperimentConfig& cfg);
BenchResult run_workload(const ExperimentConfig& cfg);

struct ThresholdPoint {
  int d = 3;
  double p_phys = 0.0;
  double p_log = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  std::string source;  // "monte_carlo" or "analytic_model"
};

// Calibrated sub-threshold model: all curves cross (p_th, A).
inline constexpr double kThresholdPphys = 0.01;
inline constexpr double kThresholdPlog = 0.1;
double analytic_logical_rate(int d, double p_phys);

// d = 3 points by Monte Carlo; d in {5, 7, ...} from the analytic model.
std::vector<ThresholdPoint> sweep_threshold(const ExperimentConfig& base,
                                            const std::vector<int>& d_list,
                                            const std::vector<double>& p_list,
                                            uint64_t shots);

struct MethodComparisonRow {
  std::string mode;
  double syndrome_fidelity = 0.0;
  double prep_success = 0.0;  // per-attempt for cat, per-task for steane
  size_t ancilla_qubits = 0;
  double ancilla_overhead = 0.0;  // vs standard
  double depth_ratio = 0.0;       // vs standard
  double p_log = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  double suppression = 0.0;  // p_phys / p_log
};

struct MethodComparisonReport {
  double p_phys = 0.0;
  uint64_t shots = 0;
  int rounds = 0;
  std::vector<MethodComparisonRow> rows;
  nlohmann::json to_json() const;
};

MethodComparisonReport method_comparison_report(double p_phys, uint64_t shots,
                                                uint64_t seed, int rounds,
                                                int threads);

// Weighted least-squares slope of log(y) vs log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hft
