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

#include "hft/builder.hpp"
#include "hft/circuit.hpp"
#include "hft/css.hpp"
#include "hft/noise.hpp"

using namespace hft;

TEST_CASE("empty circuit stats") {
  Circuit c;
  c.add_qreg("data", 5);
  CircuitStats st = c.stats();
  CHECK(st.depth == 0);
  CHECK(st.width == 5);
  CHECK(st.measurements == 0);
}

TEST_CASE("cat prep stats: 1 H, 3 CX, depth 4") {
  Circuit c = build_cat_prep(4, 0);
  CircuitStats st = c.stats();
  CHECK(st.gate_counts.at("H") == 1);
  CHECK(st.gate_counts.at("CX") == 3);
  CHECK(st.depth == 4);
  CHECK(st.width == 4);
}

TEST_CASE("text format round-trips losslessly") {
  CssCode code = steane_code();
  SchedulerConfig cfg;
  cfg.mode = ExtractionMode::cat;
  cfg.verify = 2;
  cfg.rounds = 2;
  Circuit c = schedule_cycle(code, cfg);
  std::string text = c.to_text();
  Circuit parsed = Circuit::from_text(text);
  CHECK(parsed.to_text() == text);
  CHECK(parsed.n_qubits == c.n_qubits);
  CHECK(parsed.n_clbits == c.n_clbits);
  CHECK(parsed.instructions.size() == c.instructions.size());

  // Instrumented circuits round-trip too (noise sites carry roles).
  Circuit noisy = instrument(c, NoiseModel::defaults());
  std::string ntext = noisy.to_text();
  CHECK(Circuit::from_text(ntext).to_text() == ntext);
}

TEST_CASE("sample instruction vocabulary") {
  std::string text =
      "QUBITS 6\n"
      "CLBITS 4\n"
      "H 3\n"
      "CX 0 4\n"
      "M 4 -> c2\n"
      "R 4\n"
      "NOISE2 0 4 @coupling\n"
      "CPAULI X 5 if c2\n";
  Circuit c = Circuit::from_text(text);
  CHECK(c.instructions.size() == 6);
  CHECK(c.instructions[0].kind == InstrKind::gate);
  CHECK(c.instructions[2].kind == InstrKind::measure);
  CHECK(c.instructions[2].cbit == 2);
  CHECK(c.instructions[4].kind == InstrKind::noise2);
  CHECK(c.instructions[4].role == NoiseRole::coupling);
  CHECK(c.instructions[5].kind == InstrKind::cpauli);
  CHECK(c.instructions[5].pauli == PauliKind::X);
}

TEST_CASE("validation rejects bad indices") {
  std::string text =
      "QUBITS 2\n"
      "CLBITS 1\n"
      "H 5\n";
  CHECK_THROWS_AS(Circuit::from_text(text), std::invalid_argument);
  CHECK_THROWS_AS(Circuit::from_text("QUBITS 2\nCLBITS 1\nFOO 1\n"),
                  std::invalid_argument);
}

TEST_CASE("depth counts qubit-sharing chains") {
  Circuit c;
  c.add_qreg("q", 3);
  c.gate1(GateKind::H, 0);
  c.gate1(GateKind::H, 1);  // parallel with the first H
  c.cx(0, 1);
  c.cx(1, 2);
  CircuitStats st = c.stats();
  CHECK(st.depth == 3);
}

TEST_CASE("render produces one lane per qubit") {
  Circuit c;
  c.add_qreg("data", 2);
  c.add_creg("m", 1);
  c.gate1(GateKind::H, 0);
  c.cx(0, 1);
  c.tick();
  c.measure(1, 0);
  std::string art = c.render();
  CHECK(art.find("data[0]") != std::string::npos);
  CHECK(art.find("data[1]") != std::string::npos);
  CHECK(art.find('H') != std::string::npos);
  CHECK(art.find('M') != std::string::npos);
  CHECK(art.find('|') != std::string::npos);  // round separator
}

TEST_CASE("registers survive the text format") {
  Circuit c;
  c.add_qreg("data", 7);
  c.add_qreg("anc", 6);
  c.add_creg("syn", 6);
  Circuit parsed = Circuit::from_text(c.to_text());
  CHECK(parsed.qregs.at("data").count == 7);
  CHECK(parsed.qregs.at("anc").start == 7);
  CHECK(parsed.cregs.at("syn").count == 6);
}
