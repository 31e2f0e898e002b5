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

#include <cmath>

#include "hft/temporal.hpp"

#include "oracles.hpp"

using namespace hft;

namespace {

SyndromeStream stream_of(const std::vector<std::vector<uint8_t>>& obs) {
  SyndromeStream s;
  s.rounds = obs.size();
  s.stabs = obs.empty() ? 0 : obs[0].size();
  s.observations = obs;
  return s;
}

}  // namespace

TEST_CASE("majority vote basics") {
  // Constant stream of ones: bit 1, confidence 1.
  auto dec = majority_vote(stream_of({{1}, {1}, {1}}), 3);
  CHECK(dec.back().bits[0] == 1);
  CHECK(dec.back().confidence[0] == doctest::Approx(1.0));

  // 1,0,1 with window 3: bit 1, confidence 2/3.
  dec = majority_vote(stream_of({{1}, {0}, {1}}), 3);
  CHECK(dec.back().bits[0] == 1);
  CHECK(dec.back().confidence[0] == doctest::Approx(2.0 / 3.0));

  // Round-0 tie impossible with W odd; even-count tie resolves to the
  // previous reported bit.
  dec = majority_vote(stream_of({{1}, {0}}), 2);
  CHECK(dec[0].bits[0] == 1);
  CHECK(dec[1].bits[0] == 1);  // tie -> previous (1)

  CHECK_THROWS_AS(majority_vote(stream_of({}), 3), std::invalid_argument);
  CHECK_THROWS_AS(majority_vote(stream_of({{1}}), 0), std::invalid_argument);
}

TEST_CASE("viterbi with perfect observations reproduces them") {
  HmmParams p;
  p.q_flip = 0.05;
  p.r_obs = 0.0;
  auto dec = viterbi_decode(stream_of({{1}, {0}, {1}, {1}}), p);
  CHECK(dec[0].bits[0] == 1);
  CHECK(dec[1].bits[0] == 0);
  CHECK(dec[2].bits[0] == 1);
  CHECK(dec[3].bits[0] == 1);
  for (const auto& d : dec) CHECK(d.confidence[0] == doctest::Approx(1.0));
}

TEST_CASE("viterbi all-zero observations stay zero") {
  HmmParams p;
  p.q_flip = 0.01;
  p.r_obs = 0.1;
  auto dec = viterbi_decode(
      stream_of({{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}), p);
  for (const auto& d : dec) {
    CHECK(d.bits[0] == 0);
    CHECK(d.bits[1] == 0);
  }
}

TEST_CASE("viterbi attains the brute-force MAP score on all length-8 words") {
  // Maximizers can tie; MAP equality means the decoded path reaches the
  // exhaustive maximum likelihood.
  for (double q : {0.02, 0.1, 0.3}) {
    for (double r : {0.05, 0.15, 0.4}) {
      HmmParams p;
      p.q_flip = q;
      p.r_obs = r;
      for (uint32_t word = 0; word < 256; word++) {
        std::vector<uint8_t> obs(8);
        for (size_t t = 0; t < 8; t++) obs[t] = (word >> t) & 1;
        std::vector<std::vector<uint8_t>> mat(8, std::vector<uint8_t>(1));
        for (size_t t = 0; t < 8; t++) mat[t][0] = obs[t];
        auto dec = viterbi_decode(stream_of(mat), p);
        std::vector<uint8_t> path(8);
        for (size_t t = 0; t < 8; t++) path[t] = dec[t].bits[0];
        double got = hft_test::path_log_score(obs, path, p);
        double best = hft_test::brute_force_map_score(obs, p);
        REQUIRE_MESSAGE(got == doctest::Approx(best).epsilon(1e-12),
                        "q=" << q << " r=" << r << " word=" << word);
      }
    }
  }
}

TEST_CASE("bayes filter matches hand-computed single update") {
  // prior0 = 0.5, r_obs = 0.1, obs = 1 -> posterior1 = 0.9.
  HmmParams p;
  p.q_flip = 0.0;
  p.r_obs = 0.1;
  p.prior0 = 0.5;
  auto dec = bayes_filter(stream_of({{1}}), p);
  CHECK(dec[0].bits[0] == 1);
  CHECK(dec[0].confidence[0] == doctest::Approx(0.9));

  // prior0 = 1, r_obs = 0, obs = 0 -> confidence 1.
  p.prior0 = 1.0;
  p.r_obs = 0.0;
  auto dec2 = bayes_filter(stream_of({{0}}), p);
  CHECK(dec2[0].bits[0] == 0);
  CHECK(dec2[0].confidence[0] == doctest::Approx(1.0));
}

TEST_CASE("bayes confidence plateaus above 0.9 on stable streams") {
  HmmParams p;
  p.q_flip = 0.01;
  p.r_obs = 0.1;
  p.prior0 = 0.5;
  std::vector<std::vector<uint8_t>> obs(16, std::vector<uint8_t>{1});
  auto dec = bayes_filter(stream_of(obs), p);
  for (size_t t = 4; t < 16; t++) {
    CHECK(dec[t].bits[0] == 1);
    CHECK(dec[t].confidence[0] > 0.9);
  }
  // Monotone approach to the plateau over the first rounds.
  CHECK(dec[1].confidence[0] >= dec[0].confidence[0] - 1e-12);
  CHECK(dec[2].confidence[0] >= dec[1].confidence[0] - 1e-12);
}

TEST_CASE("bayes posterior normalization is exact to 1e-12") {
  HmmParams p;
  p.q_flip = 0.07;
  p.r_obs = 0.2;
  SyndromeStream s = sample_stream(1000, 3, p, 77, 0);
  auto dec = bayes_filter(s, p);
  for (const auto& d : dec) {
    for (size_t b = 0; b < 3; b++) {
      CHECK(d.confidence[b] >= 0.5 - 1e-12);
      CHECK(d.confidence[b] <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("ambiguous final observation drops confidence and is flagged") {
  HmmParams p;
  p.q_flip = 0.1;
  p.r_obs = 0.3;
  // Stable run of ones, then one contradicting observation: the posterior
  // ends near the decision boundary.
  std::vector<std::vector<uint8_t>> obs;
  for (int t = 0; t < 8; t++) obs.push_back({1});
  obs.push_back({0});
  SyndromeStream s = stream_of(obs);
  s.hidden_truth = obs;  // nominal truth for the report path
  MethodComparison cmp = compare_methods(s, p, 5);
  CHECK(cmp.methods.size() == 3);
  auto bay = bayes_filter(s, p);
  CHECK(bay.back().confidence[0] < 0.75);
  // Methods disagree on the final bit (majority holds 1, the filter's
  // report is flagged as a disagreement round or low confidence).
  auto maj = majority_vote(s, 5);
  bool split = maj.back().bits[0] != bay.back().bits[0] ||
               !cmp.disagreement_rounds.empty() ||
               bay.back().confidence[0] < 0.75;
  CHECK(split);
}

TEST_CASE("viterbi beats or ties majority on noisy synthetic streams") {
  HmmParams p;
  p.q_flip = 0.05;
  p.r_obs = 0.1;
  size_t vit_hits = 0, maj_hits = 0, total = 0;
  for (uint64_t i = 0; i < 1000; i++) {
    SyndromeStream s = sample_stream(16, 1, p, 555, i);
    auto vit = viterbi_decode(s, p);
    auto maj = majority_vote(s, 5);
    for (size_t t = 0; t < 16; t++) {
      vit_hits += vit[t].bits[0] == (*s.hidden_truth)[t][0];
      maj_hits += maj[t].bits[0] == (*s.hidden_truth)[t][0];
      total++;
    }
  }
  CHECK(vit_hits >= maj_hits);
  CHECK(double(vit_hits) / double(total) > 0.8);
}

TEST_CASE("monotone degradation in observation noise") {
  HmmParams gen;
  gen.q_flip = 0.05;
  std::vector<double> acc;
  for (double r : {0.01, 0.05, 0.1, 0.2}) {
    gen.r_obs = r;
    size_t hits = 0, total = 0;
    for (uint64_t i = 0; i < 3000; i++) {
      SyndromeStream s = sample_stream(12, 1, gen, 888, i);
      auto vit = viterbi_decode(s, gen);
      for (size_t t = 0; t < 12; t++) {
        hits += vit[t].bits[0] == (*s.hidden_truth)[t][0];
        total++;
      }
    }
    acc.push_back(double(hits) / double(total));
  }
  // Allow 3-sigma slack on ~36k samples (sigma ~ 0.26%).
  for (size_t i = 1; i < acc.size(); i++) CHECK(acc[i] <= acc[i - 1] + 0.008);
}

TEST_CASE("confidence calibration: high-confidence bayes decisions are right") {
  HmmParams p;
  p.q_flip = 0.05;
  p.r_obs = 0.1;
  size_t confident = 0, confident_right = 0;
  for (uint64_t i = 0; i < 2000; i++) {
    SyndromeStream s = sample_stream(16, 1, p, 999, i);
    auto dec = bayes_filter(s, p);
    for (size_t t = 0; t < 16; t++) {
      if (dec[t].confidence[0] >= 0.9) {
        confident++;
        confident_right += dec[t].bits[0] == (*s.hidden_truth)[t][0];
      }
    }
  }
  REQUIRE(confident > 1000);
  CHECK(double(confident_right) / double(confident) >= 0.85);
}

TEST_CASE("adaptive acceptance utility") {
  HmmParams p;
  p.q_flip = 0.01;
  p.r_obs = 0.1;
  std::vector<std::vector<uint8_t>> obs(10, std::vector<uint8_t>{1, 0});
  auto dec = bayes_filter(stream_of(obs), p);
  auto accepted_at = accept_when_confident(dec, 0.95);
  REQUIRE(accepted_at.size() == 2);
  CHECK(accepted_at[0] >= 0);
  CHECK(accepted_at[1] >= 0);
  // A 0.999999 threshold is never reached on noisy chains.
  auto never = accept_when_confident(dec, 0.999999);
  CHECK(never[0] == -1);
}

TEST_CASE("compare_methods agrees on clean streams") {
  HmmParams p;
  p.q_flip = 0.02;
  p.r_obs = 0.05;
  std::vector<std::vector<uint8_t>> obs(8, std::vector<uint8_t>{0, 1, 0});
  SyndromeStream s = stream_of(obs);
  s.hidden_truth = obs;
  MethodComparison cmp = compare_methods(s, p, 5);
  for (const auto& m : cmp.methods) CHECK(m.accuracy == doctest::Approx(1.0));
  CHECK(cmp.disagreement_rounds.empty());
  CHECK_THROWS_AS(compare_methods(stream_of(obs), p, 5),
                  std::invalid_argument);
}

TEST_CASE("fit_default_params") {
  CssCode code = steane_code();
  SchedulerConfig cfg;
  cfg.mode = ExtractionMode::standard;
  cfg.rounds = 4;

  HmmParams off = fit_default_params(code, cfg, NoiseModel::noiseless(), 1, 10);
  CHECK(off.q_flip == 0.0);
  CHECK(off.r_obs == 0.0);

  // p_meas-only model at raw circuit-level rates: fitted r_obs near 0.015.
  NoiseModel meas_only = NoiseModel::noiseless();
  meas_only.p_meas = 0.015;
  meas_only.enabled = ch_meas;
  meas_only.binding = NoiseBinding::circuit_level();
  HmmParams fit = fit_default_params(code, cfg, meas_only, 1, 10000);
  CHECK(fit.r_obs > 0.012);
  CHECK(fit.r_obs < 0.018);

  // Default model: both parameters small but nonzero.
  NoiseModel def = NoiseModel::defaults();
  def.binding = NoiseBinding::calibrated();
  HmmParams d = fit_default_params(code, cfg, def, 1, 4000);
  CHECK(d.q_flip > 0.0);
  CHECK(d.q_flip < 0.1);
  CHECK(d.r_obs > 0.0);
  CHECK(d.r_obs < 0.1);
}
