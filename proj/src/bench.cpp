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

#include "hft/bench.hpp"

#include <chrono>
#include <cmath>
#include <thread>

namespace hft {

WilsonInterval estimate_rate(uint64_t failures, uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (failures > trials) throw std::invalid_argument("failures > trials");
  const double z = 1.959963984540054;
  double n = double(trials);
  double p = double(failures) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  WilsonInterval w;
  w.rate = p;
  w.lo = std::max(0.0, center - half);
  w.hi = std::min(1.0, center + half);
  return w;
}

NoiseModel ExperimentConfig::resolve_noise() const {
  NoiseModel m = noise ? *noise : NoiseModel::proportional(p_phys);
  if (binding == "circuit")
    m.binding = NoiseBinding::circuit_level();
  else if (binding == "custom" && noise)
    m.binding = noise->binding;  // caller-supplied multipliers
  else
    m.binding = NoiseBinding::calibrated();
  return m;
}

NoiseModel noise_from_json(const nlohmann::json& j) {
  NoiseModel m;
  m.p1 = j.value("p1", 0.001);
  m.p2 = j.value("p2", 0.01);
  m.p_meas = j.value("p_meas", 0.015);
  m.t1_us = j.value("t1_us", 100.0);
  m.t2_us = j.value("t2_us", 80.0);
  if (j.contains("gate_times")) {
    const auto& g = j["gate_times"];
    m.gate_time_1q_us = g.value("g1_us", 0.05);
    m.gate_time_2q_us = g.value("g2_us", 0.3);
    m.meas_time_us = g.value("meas_us", 1.0);
  }
  if (j.contains("channels")) {
    if (j["channels"].is_array()) {
      m.enabled = 0;
      for (const auto& c : j["channels"]) {
        std::string name = c.get<std::string>();
        if (name == "gate1") m.enabled |= ch_gate1;
        else if (name == "gate2") m.enabled |= ch_gate2;
        else if (name == "meas") m.enabled |= ch_meas;
        else if (name == "idle") m.enabled |= ch_idle;
        else throw std::invalid_argument("unknown noise channel: " + name);
      }
    } else {
      m.enabled = uint8_t(j["channels"].get<int>());
    }
  }
  return m;
}

nlohmann::json noise_to_json(const NoiseModel& m) {
  nlohmann::json channels = nlohmann::json::array();
  if (m.enabled & ch_gate1) channels.push_back("gate1");
  if (m.enabled & ch_gate2) channels.push_back("gate2");
  if (m.enabled & ch_meas) channels.push_back("meas");
  if (m.enabled & ch_idle) channels.push_back("idle");
  return nlohmann::json{
      {"p1", m.p1},
      {"p2", m.p2},
      {"p_meas", m.p_meas},
      {"t1_us", m.t1_us},
      {"t2_us", m.t2_us},
      {"gate_times",
       {{"g1_us", m.gate_time_1q_us},
        {"g2_us", m.gate_time_2q_us},
        {"meas_us", m.meas_time_us}}},
      {"channels", channels}};
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["code"] = code_id;
  j["mode"] = mode_name(scheduler.mode);
  j["readout"] = readout_name(scheduler.readout);
  j["rounds"] = scheduler.rounds;
  j["verify"] = scheduler.verify;
  j["max_prep_attempts"] = scheduler.max_prep_attempts;
  j["swap_policy"] = scheduler.swap_policy;
  j["stable_recovery"] = scheduler.stable_recovery;
  j["pauli_frame_recovery"] = scheduler.pauli_frame_recovery;
  j["p_phys"] = p_phys;
  j["binding"] = binding;
  j["shots"] = shots;
  j["seed"] = seed;
  j["threads"] = threads;
  j["workload"] = workload.kind == WorkloadSpec::Kind::memory ? "memory"
                  : workload.kind == WorkloadSpec::Kind::rb   ? "rb"
                                                              : "t_heavy";
  j["workload_depth"] = workload.depth;
  j["t_density"] = workload.t_density;
  NoiseModel m = resolve_noise();
  j["noise"] = noise_to_json(m);
  j["noise"]["binding"] = {{"name", m.binding.name},
                           {"prep", m.binding.prep},
                           {"coupling", m.binding.coupling},
                           {"readout", m.binding.readout},
                           {"background", m.binding.background},
                           {"recovery", m.binding.recovery}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.code_id = j.value("code", "steane");
  c.scheduler.mode = mode_from_name(j.value("mode", "standard"));
  c.scheduler.readout = readout_from_name(j.value("readout", "batched"));
  c.scheduler.rounds = j.value("rounds", 10);
  c.scheduler.verify = j.value("verify", 2);
  c.scheduler.max_prep_attempts = j.value("max_prep_attempts", 3);
  c.scheduler.swap_policy = j.value("swap_policy", true);
  c.scheduler.stable_recovery = j.value("stable_recovery", true);
  c.scheduler.pauli_frame_recovery = j.value("pauli_frame_recovery", false);
  c.p_phys = j.value("p_phys", 1e-3);
  c.binding = j.value("binding", "calibrated");
  c.shots = j.value("shots", uint64_t(100000));
  c.seed = j.value("seed", uint64_t(1));
  c.threads = j.value("threads", 0);
  std::string w = j.value("workload", "memory");
  c.workload.kind = w == "rb"        ? WorkloadSpec::Kind::rb
                    : w == "t_heavy" ? WorkloadSpec::Kind::t_heavy
                                     : WorkloadSpec::Kind::memory;
  c.workload.depth = j.value("workload_depth", 0);
  c.workload.t_density = j.value("t_density", 0.0);
  if (j.contains("noise")) c.noise = noise_from_json(j["noise"]);
  return c;
}

nlohmann::json BenchResult::to_json() const {
  nlohmann::json j;
  j["p_phys"] = p_phys;
  j["p_log"] = p_log;
  j["fail_prob"] = fail_prob;
  j["ci_low"] = ci_low;
  j["ci_high"] = ci_high;
  j["failures"] = failures;
  j["shots"] = shots;
  j["rounds"] = rounds;
  j["n_data"] = n_data;
  j["n_anc"] = n_anc;
  j["n_total"] = n_total;
  j["width"] = width;
  j["depth"] = depth;
  j["wall_time_s"] = wall_time_s;
  j["syndrome_fidelity"] = syndrome_fidelity;
  j["prep_attempt_success"] = prep_attempt_success;
  j["prep_task_success"] = prep_task_success;
  j["prep_attempts"] = prep_attempts;
  j["verification_failures"] = verification_failures;
  j["swaps"] = swaps;
  j["cat_accept_rate"] = cat_accept_rate;
  j["cat_accepted_corrupt_rate"] = cat_accepted_corrupt_rate;
  return j;
}

namespace {

CssCode code_by_id(const std::string& id) {
  if (id == "steane") return steane_code();
  if (id == "rep3") return repetition_code_3();
  throw std::invalid_argument("unknown code id: " + id);
}

struct Tally {
  uint64_t failures = 0;
  ShotStats stats;
  void absorb(const ShotOutcome& o) {
    failures += o.failed ? 1 : 0;
    stats.prep_tasks += o.stats.prep_tasks;
    stats.prep_successes += o.stats.prep_successes;
    stats.prep_attempts += o.stats.prep_attempts;
    stats.verification_failures += o.stats.verification_failures;
    stats.swaps += o.stats.swaps;
    stats.fallbacks += o.stats.fallbacks;
    stats.cat_extractions += o.stats.cat_extractions;
    stats.cat_accepted += o.stats.cat_accepted;
    stats.cat_accepted_corrupt += o.stats.cat_accepted_corrupt;
    stats.syn_bits += o.stats.syn_bits;
    stats.syn_bits_wrong += o.stats.syn_bits_wrong;
  }
  void merge(const Tally& t) {
    failures += t.failures;
    stats.prep_tasks += t.stats.prep_tasks;
    stats.prep_successes += t.stats.prep_successes;
    stats.prep_attempts += t.stats.prep_attempts;
    stats.verification_failures += t.stats.verification_failures;
    stats.swaps += t.stats.swaps;
    stats.fallbacks += t.stats.fallbacks;
    stats.cat_extractions += t.stats.cat_extractions;
    stats.cat_accepted += t.stats.cat_accepted;
    stats.cat_accepted_corrupt += t.stats.cat_accepted_corrupt;
    stats.syn_bits += t.stats.syn_bits;
    stats.syn_bits_wrong += t.stats.syn_bits_wrong;
  }
};

BenchResult run_experiment(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  CssCode code = code_by_id(cfg.code_id);
  NoiseModel noise = cfg.resolve_noise();

  int threads = cfg.threads > 0
                    ? cfg.threads
                    : int(std::max(1u, std::thread::hardware_concurrency()));
  threads = int(std::min<uint64_t>(uint64_t(threads), cfg.shots));

  std::vector<Tally> tallies(threads);
  auto worker = [&](int w) {
    CycleRunner runner(code, cfg.scheduler, noise, cfg.seed);
    // Shots striped by thread; per-shot streams make order irrelevant.
    for (uint64_t s = uint64_t(w); s < cfg.shots; s += uint64_t(threads))
      tallies[w].absorb(runner.run_shot(s, cfg.workload));
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; w++) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  Tally total;
  for (const auto& t : tallies) total.merge(t);

  BenchResult r;
  r.p_phys = noise.p1;
  r.failures = total.failures;
  r.shots = cfg.shots;
  r.rounds = cfg.scheduler.rounds;
  uint64_t round_trials = cfg.shots * uint64_t(cfg.scheduler.rounds);
  WilsonInterval w = estimate_rate(total.failures, round_trials);
  r.p_log = w.rate;
  r.ci_low = w.lo;
  r.ci_high = w.hi;
  r.fail_prob = double(total.failures) / double(cfg.shots);
  r.n_data = code.n;
  Circuit flat = schedule_cycle(code, cfg.scheduler);
  CircuitStats st = flat.stats();
  r.width = st.width;
  r.depth = st.depth;
  r.n_anc = flat.n_qubits - uint32_t(code.n);
  r.n_total = flat.n_qubits;
  r.syndrome_fidelity =
      total.stats.syn_bits
          ? 1.0 - double(total.stats.syn_bits_wrong) / double(total.stats.syn_bits)
          : 1.0;
  r.prep_attempts = total.stats.prep_attempts;
  r.verification_failures = total.stats.verification_failures;
  r.swaps = total.stats.swaps;
  r.prep_attempt_success =
      total.stats.prep_attempts
          ? 1.0 - double(total.stats.verification_failures) /
                      double(total.stats.prep_attempts)
          : 1.0;
  r.prep_task_success =
      total.stats.prep_tasks
          ? double(total.stats.prep_successes) / double(total.stats.prep_tasks)
          : 1.0;
  r.cat_accept_rate =
      total.stats.cat_extractions
          ? double(total.stats.cat_accepted) / double(total.stats.cat_extractions)
          : 1.0;
  r.cat_accepted_corrupt_rate =
      total.stats.cat_accepted
          ? double(total.stats.cat_accepted_corrupt) /
                double(total.stats.cat_accepted)
          : 0.0;
  r.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return r;
}

}  // namespace

BenchResult run_memory(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.workload = WorkloadSpec{};
  return run_experiment(c);
}

BenchResult run_workload(const ExperimentConfig& cfg) {
  if (cfg.workload.kind == WorkloadSpec::Kind::t_heavy &&
      (cfg.workload.t_density < 0.0 || cfg.workload.t_density > 1.0))
    throw std::invalid_argument("t_density must be in [0, 1]");
  return run_experiment(cfg);
}

double analytic_logical_rate(int d, double p_phys) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("d must be odd, >= 3");
  double exponent = double((d + 1) / 2);
  return kThresholdPlog * std::pow(p_phys / kThresholdPphys, exponent);
}

std::vector<ThresholdPoint> sweep_threshold(const ExperimentConfig& base,
                                            const std::vector<int>& d_list,
                                            const std::vector<double>& p_list,
                                            uint64_t shots) {
  for (size_t i = 1; i < p_list.size(); i++)
    if (p_list[i] <= p_list[i - 1])
      throw std::invalid_argument("p_list must be ascending");
  std::vector<ThresholdPoint> out;
  for (int d : d_list) {
    for (double p : p_list) {
      ThresholdPoint tp;
      tp.d = d;
      tp.p_phys = p;
      if (d == 3) {
        ExperimentConfig cfg = base;
        cfg.p_phys = p;
        cfg.noise.reset();
        cfg.shots = shots;
        BenchResult r = run_memory(cfg);
        tp.p_log = r.p_log;
        tp.ci_low = r.ci_low;
        tp.ci_high = r.ci_high;
        tp.source = "monte_carlo";
      } else {
        tp.p_log = analytic_logical_rate(d, p);
        tp.ci_low = tp.p_log;
        tp.ci_high = tp.p_log;
        tp.source = "analytic_model";
      }
      out.push_back(tp);
    }
  }
  return out;
}

nlohmann::json MethodComparisonReport::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"mode", r.mode},
                      {"syndrome_fidelity", r.syndrome_fidelity},
                      {"prep_success", r.prep_success},
                      {"ancilla_qubits", r.ancilla_qubits},
                      {"ancilla_overhead", r.ancilla_overhead},
                      {"depth_ratio", r.depth_ratio},
                      {"p_log", r.p_log},
                      {"ci_low", r.ci_low},
                      {"ci_high", r.ci_high},
                      {"suppression", r.suppression}});
  }
  nlohmann::json j;
  j["p_phys"] = p_phys;
  j["shots"] = shots;
  j["rounds"] = rounds;
  j["syndrome_fidelity_definition"] =
      "fraction of accepted per-round syndrome bits matching the "
      "simulation-truth syndrome at readout time";
  j["prep_success_definition"] =
      "cat: accepted attempts / attempts; steane: verified tasks / tasks "
      "within the attempt budget";
  j["rows"] = rows_j;
  return j;
}

MethodComparisonReport method_comparison_report(double p_phys, uint64_t shots,
                                                uint64_t seed, int rounds,
                                                int threads) {
  MethodComparisonReport rep;
  rep.p_phys = p_phys;
  rep.shots = shots;
  rep.rounds = rounds;
  double std_depth = 0.0;
  size_t std_anc = 0;
  for (ExtractionMode mode : {ExtractionMode::standard, ExtractionMode::cat,
                              ExtractionMode::steane}) {
    ExperimentConfig cfg;
    cfg.scheduler.mode = mode;
    cfg.scheduler.rounds = rounds;
    cfg.p_phys = p_phys;
    cfg.shots = shots;
    cfg.seed = seed;
    cfg.threads = threads;
    BenchResult r = run_memory(cfg);
    MethodComparisonRow row;
    row.mode = mode_name(mode);
    row.syndrome_fidelity = r.syndrome_fidelity;
    row.prep_success = mode == ExtractionMode::cat ? r.prep_attempt_success
                                                   : r.prep_task_success;
    row.ancilla_qubits = r.n_anc;
    row.p_log = r.p_log;
    row.ci_low = r.ci_low;
    row.ci_high = r.ci_high;
    row.suppression = r.p_log > 0.0 ? p_phys / r.p_log : 0.0;
    if (mode == ExtractionMode::standard) {
      std_depth = double(r.depth);
      std_anc = r.n_anc;
      row.ancilla_overhead = 1.0;
      row.depth_ratio = 1.0;
    } else {
      row.ancilla_overhead = std_anc ? double(r.n_anc) / double(std_anc) : 0.0;
      row.depth_ratio = std_depth > 0.0 ? double(r.depth) / std_depth : 0.0;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t n = 0;
  for (size_t i = 0; i < x.size(); i++) {
    if (x[i] <= 0.0 || y[i] <= 0.0) continue;
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    n++;
  }
  if (n < 2) throw std::invalid_argument("need >= 2 positive points");
  double dn = double(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace hft
