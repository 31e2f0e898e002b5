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

#include "hft/temporal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hft/executor.hpp"

namespace hft {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}
}  // namespace

SyndromeStream sample_stream(size_t rounds, size_t stabs,
                             const HmmParams& params, uint64_t seed,
                             uint64_t stream_index) {
  CounterRng rng(seed, stream_index);
  SyndromeStream s;
  s.rounds = rounds;
  s.stabs = stabs;
  s.observations.assign(rounds, std::vector<uint8_t>(stabs, 0));
  s.hidden_truth = std::vector<std::vector<uint8_t>>(
      rounds, std::vector<uint8_t>(stabs, 0));
  for (size_t b = 0; b < stabs; b++) {
    uint8_t h = rng.next_double() < params.prior0 ? 0 : 1;
    for (size_t t = 0; t < rounds; t++) {
      if (t > 0 && rng.next_double() < params.q_flip) h ^= 1;
      (*s.hidden_truth)[t][b] = h;
      uint8_t o = h;
      if (rng.next_double() < params.r_obs) o ^= 1;
      s.observations[t][b] = o;
    }
  }
  return s;
}

std::vector<TemporalDecision> majority_vote(const SyndromeStream& s,
                                            int window) {
  if (s.rounds == 0) throw std::invalid_argument("empty stream");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<TemporalDecision> out(s.rounds);
  std::vector<uint8_t> prev(s.stabs, 0);
  for (size_t t = 0; t < s.rounds; t++) {
    TemporalDecision d;
    d.method = "majority";
    d.bits.resize(s.stabs);
    d.confidence.resize(s.stabs);
    size_t lo = t + 1 >= size_t(window) ? t + 1 - size_t(window) : 0;
    size_t len = t - lo + 1;
    for (size_t b = 0; b < s.stabs; b++) {
      size_t ones = 0;
      for (size_t k = lo; k <= t; k++) ones += s.observations[k][b];
      size_t zeros = len - ones;
      uint8_t bit;
      if (ones > zeros)
        bit = 1;
      else if (zeros > ones)
        bit = 0;
      else
        bit = prev[b];
      d.bits[b] = bit;
      d.confidence[b] = double(std::max(ones, zeros)) / double(len);
      prev[b] = bit;
    }
    out[t] = std::move(d);
  }
  return out;
}

std::vector<TemporalDecision> viterbi_decode(const SyndromeStream& s,
                                             const HmmParams& params) {
  if (s.rounds == 0) throw std::invalid_argument("empty stream");
  size_t T = s.rounds, S = s.stabs;
  double lstay = safe_log(1.0 - params.q_flip);
  double lflip = safe_log(params.q_flip);
  double lhit = safe_log(1.0 - params.r_obs);
  double lmiss = safe_log(params.r_obs);
  double lprior[2] = {safe_log(params.prior0), safe_log(1.0 - params.prior0)};

  std::vector<TemporalDecision> out(T);
  for (size_t t = 0; t < T; t++) {
    out[t].method = "viterbi";
    out[t].bits.resize(S);
    out[t].confidence.resize(S);
  }

  std::vector<double> delta0(T), delta1(T), alpha0(T), alpha1(T);
  std::vector<uint8_t> from0(T), from1(T);
  for (size_t b = 0; b < S; b++) {
    auto emit = [&](size_t t, int state) {
      return s.observations[t][b] == state ? lhit : lmiss;
    };
    delta0[0] = lprior[0] + emit(0, 0);
    delta1[0] = lprior[1] + emit(0, 1);
    alpha0[0] = delta0[0];
    alpha1[0] = delta1[0];
    for (size_t t = 1; t < T; t++) {
      // ties prefer the lower-numbered predecessor
      double a = delta0[t - 1] + lstay, c = delta1[t - 1] + lflip;
      from0[t] = a >= c ? 0 : 1;
      delta0[t] = std::max(a, c) + emit(t, 0);
      double d = delta0[t - 1] + lflip, e = delta1[t - 1] + lstay;
      from1[t] = d >= e ? 0 : 1;
      delta1[t] = std::max(d, e) + emit(t, 1);
      alpha0[t] = log_sum_exp(alpha0[t - 1] + lstay, alpha1[t - 1] + lflip) +
                  emit(t, 0);
      alpha1[t] = log_sum_exp(alpha0[t - 1] + lflip, alpha1[t - 1] + lstay) +
                  emit(t, 1);
    }
    std::vector<uint8_t> path(T);
    path[T - 1] = delta0[T - 1] >= delta1[T - 1] ? 0 : 1;
    for (size_t t = T - 1; t > 0; t--)
      path[t - 1] = path[t] == 0 ? from0[t] : from1[t];
    for (size_t t = 0; t < T; t++) {
      out[t].bits[b] = path[t];
      double best = path[t] == 0 ? delta0[t] : delta1[t];
      double norm = log_sum_exp(alpha0[t], alpha1[t]);
      double conf = std::exp(best - norm);
      out[t].confidence[b] = std::min(1.0, conf);
    }
  }
  return out;
}

std::vector<TemporalDecision> bayes_filter(const SyndromeStream& s,
                                           const HmmParams& params) {
  if (s.rounds == 0) throw std::invalid_argument("empty stream");
  size_t T = s.rounds, S = s.stabs;
  std::vector<TemporalDecision> out(T);
  for (size_t t = 0; t < T; t++) {
    out[t].method = "bayes";
    out[t].bits.resize(S);
    out[t].confidence.resize(S);
  }
  for (size_t b = 0; b < S; b++) {
    double p0 = params.prior0, p1 = 1.0 - params.prior0;
    for (size_t t = 0; t < T; t++) {
      if (t > 0) {
        double n0 = p0 * (1.0 - params.q_flip) + p1 * params.q_flip;
        double n1 = p1 * (1.0 - params.q_flip) + p0 * params.q_flip;
        p0 = n0;
        p1 = n1;
      }
      double l0 = s.observations[t][b] == 0 ? 1.0 - params.r_obs : params.r_obs;
      double l1 = s.observations[t][b] == 1 ? 1.0 - params.r_obs : params.r_obs;
      p0 *= l0;
      p1 *= l1;
      double norm = p0 + p1;
      p0 /= norm;
      p1 /= norm;
      uint8_t bit = p1 > p0 ? 1 : 0;
      out[t].bits[b] = bit;
      out[t].confidence[b] = bit ? p1 : p0;
    }
  }
  return out;
}

std::vector<int> accept_when_confident(
    const std::vector<TemporalDecision>& per_round, double threshold) {
  if (per_round.empty()) return {};
  size_t S = per_round[0].bits.size();
  std::vector<int> out(S, -1);
  for (size_t b = 0; b < S; b++) {
    for (size_t t = 0; t < per_round.size(); t++) {
      if (per_round[t].confidence[b] > threshold) {
        out[b] = int(t);
        break;
      }
    }
  }
  return out;
}

MethodComparison compare_methods(const SyndromeStream& s,
                                 const HmmParams& params, int window) {
  if (!s.hidden_truth)
    throw std::invalid_argument("compare_methods needs hidden truth");
  MethodComparison cmp;
  auto add = [&](const std::vector<TemporalDecision>& dec) {
    MethodComparison::PerMethod m;
    m.method = dec.back().method;
    size_t hits = 0, total = 0;
    double conf_sum = 0.0;
    for (size_t t = 0; t < s.rounds; t++) {
      for (size_t b = 0; b < s.stabs; b++) {
        hits += dec[t].bits[b] == (*s.hidden_truth)[t][b];
        conf_sum += dec[t].confidence[b];
        total++;
      }
    }
    m.accuracy = double(hits) / double(total);
    m.mean_confidence = conf_sum / double(total);
    m.final_bits = dec.back().bits;
    m.final_confidence = dec.back().confidence;
    cmp.methods.push_back(std::move(m));
    return dec;
  };
  auto maj = add(majority_vote(s, window));
  auto vit = add(viterbi_decode(s, params));
  auto bay = add(bayes_filter(s, params));
  for (size_t t = 0; t < s.rounds; t++) {
    bool dis = false;
    for (size_t b = 0; b < s.stabs; b++) {
      if (maj[t].bits[b] != vit[t].bits[b] || vit[t].bits[b] != bay[t].bits[b])
        dis = true;
    }
    if (dis) cmp.disagreement_rounds.push_back(int(t));
  }
  return cmp;
}

HmmParams fit_default_params(const CssCode& code, const SchedulerConfig& cfg,
                             const NoiseModel& noise, uint64_t seed,
                             int calib_shots, int calib_rounds) {
  HmmParams out;
  out.prior0 = 1.0;  // chains start error-free
  if (noise.is_noiseless()) {
    out.q_flip = 0.0;
    out.r_obs = 0.0;
    return out;
  }

  // q_flip: per-round rate at which any support qubit picks up a relevant
  // Pauli, summed over the instrumented round's noise sites.
  SchedulerConfig one = cfg;
  one.rounds = 1;
  Circuit round = instrument(schedule_cycle(code, one), noise);
  Register data = round.qregs.at("data");
  double per_qubit[64] = {0};
  for (const auto& ins : round.instructions) {
    auto add_rate = [&](uint32_t q, double rate) {
      if (q >= data.start && q < data.start + data.count)
        per_qubit[q - data.start] += rate;
    };
    if (ins.kind == InstrKind::noise1) {
      add_rate(ins.q0, noise.p1 * noise.binding.scale(ins.role) * (2.0 / 3.0));
    } else if (ins.kind == InstrKind::noise2) {
      double rate = noise.p2 * noise.binding.scale(ins.role) * (8.0 / 15.0);
      add_rate(ins.q0, rate);
      add_rate(ins.q1, rate);
    }
  }
  double q_acc = 0.0;
  size_t rows = code.hz.rows() + code.hx.rows();
  for (size_t r = 0; r < code.hz.rows(); r++) {
    double keep = 1.0;
    for (size_t q = 0; q < code.n; q++)
      if (code.hz.row(r).get(q)) keep *= 1.0 - per_qubit[q];
    q_acc += 1.0 - keep;
  }
  for (size_t r = 0; r < code.hx.rows(); r++) {
    double keep = 1.0;
    for (size_t q = 0; q < code.n; q++)
      if (code.hx.row(r).get(q)) keep *= 1.0 - per_qubit[q];
    q_acc += 1.0 - keep;
  }
  out.q_flip = q_acc / double(rows);

  // r_obs: accepted-syndrome misreport rate from a short calibration run.
  SchedulerConfig calib = cfg;
  calib.rounds = calib_rounds;
  calib.stable_recovery = cfg.stable_recovery;
  CycleRunner runner(code, calib, noise, seed ^ 0x9e3779b9);
  uint64_t wrong = 0, total = 0;
  for (int shot = 0; shot < calib_shots; shot++) {
    ShotOutcome o = runner.run_memory_shot(uint64_t(shot));
    wrong += o.stats.syn_bits_wrong;
    total += o.stats.syn_bits;
  }
  out.r_obs = total ? double(wrong) / double(total) : noise.p_meas;
  return out;
}

}  // namespace hft
