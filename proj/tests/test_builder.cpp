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
#include "hft/executor.hpp"
#include "hft/noise.hpp"

using namespace hft;

namespace {

Executor make_exec(const Circuit& c, const CssCode* code, uint64_t seed,
                   uint64_t stream = 0) {
  return Executor(c.n_qubits, std::max<uint32_t>(c.n_clbits, 1), code,
                  NoiseModel::noiseless(), seed, stream);
}

size_t pq(size_t j) { return j - 1; }

}  // namespace

TEST_CASE("encoder prepares |0_L> with exactly 3 Hadamards") {
  CssCode code = steane_code();
  Circuit enc = build_encoder(code);
  CHECK(enc.stats().gate_counts.at("H") == 3);

  Executor ex = make_exec(enc, &code, 21);
  ex.run(enc);
  LogicalStateReport rep = logical_state_check(ex.tableau(), code, 0);
  CHECK(rep.all_plus());
  CHECK(rep.logical_z == 1);

  // Logical flip afterwards: stabilizers stay +1, Z_L flips.
  ex.tableau().apply_pauli(code.logical_x);
  rep = logical_state_check(ex.tableau(), code, 0);
  CHECK(rep.all_plus());
  CHECK(rep.logical_z == -1);
}

TEST_CASE("encoder works for any k=1 CSS code (repetition)") {
  CssCode rep = repetition_code_3();
  Circuit enc = build_encoder(rep);
  Executor ex = make_exec(enc, &rep, 3);
  ex.run(enc);
  LogicalStateReport r = logical_state_check(ex.tableau(), rep, 0);
  CHECK(r.all_plus());
  CHECK(r.logical_z == 1);
}

TEST_CASE("cat prep produces GHZ correlations") {
  Circuit c = build_cat_prep(4, 0);
  CHECK_THROWS_AS(build_cat_prep(1, 0), std::invalid_argument);

  // Noiseless measurement of all 4 ancillas gives identical bits.
  for (uint64_t s = 0; s < 20; s++) {
    Executor ex = make_exec(c, nullptr, 42, s);
    ex.run(c);
    bool b0 = ex.tableau().measure_z(0);
    for (size_t q = 1; q < 4; q++) CHECK(ex.tableau().measure_z(q) == b0);
  }

  // Bell pair statistics: equal bits, each value ~1/2 over 10k shots.
  Circuit bell = build_cat_prep(2, 0);
  size_t ones = 0;
  const size_t shots = 10000;
  for (uint64_t s = 0; s < shots; s++) {
    Executor ex = make_exec(bell, nullptr, 13, s);
    ex.run(bell);
    bool a = ex.tableau().measure_z(0);
    bool b = ex.tableau().measure_z(1);
    CHECK(a == b);
    ones += a;
  }
  double f = double(ones) / double(shots);
  CHECK(f > 0.48);
  CHECK(f < 0.52);

  // (4, 2): 6 ancillas, chain of 5 CNOTs after one H -> depth 6.
  Circuit c42 = build_cat_prep(4, 2);
  CHECK(c42.n_qubits == 6);
  CHECK(c42.stats().depth == 6);
  CHECK(c42.stats().gate_counts.at("CX") == 5);
}

TEST_CASE("shor extraction: noiseless code state gives zero syndrome") {
  CssCode code = steane_code();
  for (size_t stab = 0; stab < 3; stab++) {
    for (StabType type : {StabType::Z, StabType::X}) {
      Circuit c = build_shor_extraction(code, stab, type, 2);
      Executor ex = make_exec(c, &code, 5, stab * 2 + (type == StabType::X));
      Circuit enc = build_encoder(code);
      enc.n_qubits = c.n_qubits;
      enc.n_clbits = c.n_clbits;
      ex.run(enc);
      ex.run(c);
      Register ver = c.cregs.at("ver");
      Register syn = c.cregs.at("syn");
      for (uint32_t j = 0; j < ver.count; j++)
        CHECK(ex.clbits()[ver.start + j] == 0);
      CHECK(ex.clbits()[syn.start] == 0);
      // Non-destructive: code stabilizers still +1, logical Z intact.
      LogicalStateReport rep = logical_state_check(ex.tableau(), code, 0);
      CHECK(rep.all_plus());
      CHECK(rep.logical_z == 1);
    }
  }
}

TEST_CASE("shor extraction flags X5 on g1^Z") {
  CssCode code = steane_code();
  Circuit c = build_shor_extraction(code, 0, StabType::Z, 2);
  Executor ex = make_exec(c, &code, 6);
  Circuit enc = build_encoder(code);
  enc.n_qubits = c.n_qubits;
  enc.n_clbits = c.n_clbits;
  ex.run(enc);
  ex.apply_error(uint32_t(pq(5)), PauliKind::X);
  ex.run(c);
  CHECK(ex.clbits()[c.cregs.at("syn").start] == 1);
  CHECK(ex.clbits()[c.cregs.at("ver").start] == 0);
}

TEST_CASE("standard extraction measures stabilizer eigenvalues") {
  CssCode code = steane_code();
  for (size_t stab = 0; stab < 3; stab++) {
    Circuit c = build_standard_extraction(code, stab, StabType::Z);
    Executor ex = make_exec(c, &code, 7, stab);
    Circuit enc = build_encoder(code);
    enc.n_qubits = c.n_qubits;
    enc.n_clbits = c.n_clbits;
    ex.run(enc);
    ex.apply_error(uint32_t(pq(5)), PauliKind::X);
    ex.run(c);
    // Z-syndrome of X5 is column 5 = (1,0,1).
    bool expect = stab == 0 || stab == 2;
    CHECK((ex.clbits()[c.cregs.at("syn").start] == 1) == expect);
  }
}

TEST_CASE("steane ancilla prep: verification bits") {
  CssCode code = steane_code();
  for (AncillaBasis basis : {AncillaBasis::zero_l, AncillaBasis::plus_l}) {
    Circuit c = build_steane_ancilla_prep(code, basis);
    Executor ex = make_exec(c, &code, 8, basis == AncillaBasis::plus_l);
    ex.run(c);
    Register chk = c.cregs.at("chk");
    for (uint32_t j = 0; j < chk.count; j++)
      CHECK(ex.clbits()[chk.start + j] == 0);
  }
}

TEST_CASE("steane prep |+_L>: transversal Z_L readout is a fair coin") {
  CssCode code = steane_code();
  Circuit c = build_steane_ancilla_prep(code, AncillaBasis::plus_l);
  size_t ones = 0;
  const size_t shots = 10000;
  for (uint64_t s = 0; s < shots; s++) {
    Executor ex = make_exec(c, &code, 14, s);
    ex.run(c);
    // Z_L on the block: parity of transversal Z measurement.
    size_t par = 0;
    for (size_t q = 0; q < 7; q++) par ^= ex.tableau().measure_z(q) ? 1 : 0;
    ones += par;
  }
  double f = double(ones) / double(shots);
  CHECK(f > 0.48);
  CHECK(f < 0.52);
}

TEST_CASE("steane prep verification catches an injected X") {
  CssCode code = steane_code();
  // Inject X on block qubit 4 (1-based label 5) right after the block encoder
  // and before the comparison; the check bits must equal the Hamming column.
  Circuit c = build_steane_ancilla_prep(code, AncillaBasis::zero_l);
  // Find the instruction index where the block encoding ends: first CX
  // whose control is in the block and target in the copy.
  size_t boundary = 0;
  for (size_t i = 0; i < c.instructions.size(); i++) {
    const auto& ins = c.instructions[i];
    if (ins.kind == InstrKind::gate && ins.gate == GateKind::CX &&
        ins.q0 < 7 && ins.q1 >= 7) {
      boundary = i;
      break;
    }
  }
  Executor ex = make_exec(c, &code, 9);
  ex.inject = InjectedFault{boundary, uint32_t(pq(5)), PauliKind::X};
  ex.run(c);
  Register chk = c.cregs.at("chk");
  CHECK(ex.clbits()[chk.start + 0] == 1);
  CHECK(ex.clbits()[chk.start + 1] == 0);
  CHECK(ex.clbits()[chk.start + 2] == 1);
  CHECK(ex.clbits()[chk.start + 3] == 1);  // odd weight: logical parity trips
}

TEST_CASE("steane transversal extraction") {
  CssCode code = steane_code();
  // Layout: data 0..6, anc 7..13, copy 14..20.
  Circuit c;
  c.add_qreg("data", 7);
  c.add_qreg("anc", 7);
  c.add_qreg("copy", 7);
  Register vm = c.add_creg("vm", 7);
  Register chk = c.add_creg("chk", 4);
  Register am = c.add_creg("am", 7);
  Register syn = c.add_creg("syn", 3);
  (void)vm;
  (void)chk;

  SUBCASE("noiseless |0_L> data with |+_L> ancilla: zero Z-syndrome") {
    Circuit full = c;
    emit_encoder(full, code, 0, NoiseRole::prep);
    emit_steane_prep(full, code, AncillaBasis::plus_l, 7, 14,
                     full.cregs.at("vm").start, full.cregs.at("chk").start,
                     false);
    emit_steane_extraction(full, code, 0, 7, StabType::Z, am.start, syn.start);
    for (uint64_t s = 0; s < 10; s++) {
      Executor ex = make_exec(full, &code, 15, s);
      ex.run(full);
      // Raw readout is a random codeword, but hz * m = 0.
      for (uint32_t j = 0; j < 3; j++) CHECK(ex.clbits()[syn.start + j] == 0);
      LogicalStateReport rep = logical_state_check(ex.tableau(), code, 0);
      CHECK(rep.all_plus());
      CHECK(rep.logical_z == 1);
    }
  }

  SUBCASE("X5 on data shows up as (1,0,1)") {
    Circuit full = c;
    emit_encoder(full, code, 0, NoiseRole::prep);
    emit_steane_prep(full, code, AncillaBasis::plus_l, 7, 14,
                     full.cregs.at("vm").start, full.cregs.at("chk").start,
                     false);
    full.gate1(GateKind::X, uint32_t(pq(5)));
    emit_steane_extraction(full, code, 0, 7, StabType::Z, am.start, syn.start);
    Executor ex = make_exec(full, &code, 16);
    ex.run(full);
    CHECK(ex.clbits()[syn.start + 0] == 1);
    CHECK(ex.clbits()[syn.start + 1] == 0);
    CHECK(ex.clbits()[syn.start + 2] == 1);
  }

  SUBCASE("X-syndrome with |0_L> ancilla is non-destructive") {
    Circuit full = c;
    emit_encoder(full, code, 0, NoiseRole::prep);
    emit_steane_prep(full, code, AncillaBasis::zero_l, 7, 14,
                     full.cregs.at("vm").start, full.cregs.at("chk").start,
                     false);
    emit_steane_extraction(full, code, 0, 7, StabType::X, am.start, syn.start);
    for (uint64_t s = 0; s < 10; s++) {
      Executor ex = make_exec(full, &code, 17, s);
      ex.run(full);
      for (uint32_t j = 0; j < 3; j++) CHECK(ex.clbits()[syn.start + j] == 0);
      LogicalStateReport rep = logical_state_check(ex.tableau(), code, 0);
      CHECK(rep.all_plus());
      CHECK(rep.logical_z == 1);
    }
  }
}

TEST_CASE("scheduler config validation") {
  CssCode code = steane_code();
  SchedulerConfig bad;
  bad.mode = ExtractionMode::cat;
  bad.verify = 0;
  CHECK_THROWS_AS(schedule_cycle(code, bad), ConfigError);
  SchedulerConfig bad2;
  bad2.rounds = 0;
  CHECK_THROWS_AS(schedule_cycle(code, bad2), ConfigError);
}

TEST_CASE("scheduler emits the expected register budget") {
  CssCode code = steane_code();
  SchedulerConfig cat;
  cat.mode = ExtractionMode::cat;
  cat.verify = 2;
  Circuit ccat = schedule_cycle(code, cat);
  CHECK(ccat.n_qubits == 7 + 6 * 6);  // 6 stabilizers x (w=4 + v=2)

  SchedulerConfig std_cfg;
  Circuit cstd = schedule_cycle(code, std_cfg);
  CHECK(cstd.n_qubits == 7 + 6);

  SchedulerConfig st;
  st.mode = ExtractionMode::steane;
  Circuit csteane = schedule_cycle(code, st);
  CHECK(csteane.n_qubits == 7 + 4 * 7);

  // 16-round cat cycle carries 16 six-bit syndrome registers.
  cat.rounds = 16;
  cat.readout = ReadoutPolicy::batched;
  Circuit c16 = schedule_cycle(code, cat);
  int syn_regs = 0;
  for (const auto& [name, reg] : c16.cregs)
    if (name.rfind("syn", 0) == 0) {
      CHECK(reg.count == 6);
      syn_regs++;
    }
  CHECK(syn_regs == 16);
}

TEST_CASE("scheduler equivalence: noiseless all-zero syndromes in all modes") {
  CssCode code = steane_code();
  for (ExtractionMode mode : {ExtractionMode::standard, ExtractionMode::cat,
                              ExtractionMode::steane}) {
    for (ReadoutPolicy ro : {ReadoutPolicy::sequential, ReadoutPolicy::batched}) {
      SchedulerConfig cfg;
      cfg.mode = mode;
      cfg.readout = ro;
      cfg.rounds = 3;
      Circuit cyc = schedule_cycle(code, cfg);
      Executor ex = make_exec(cyc, &code, 19);
      Circuit enc = build_encoder(code);
      enc.n_qubits = cyc.n_qubits;
      enc.n_clbits = cyc.n_clbits;
      ex.run(enc);
      ex.run(cyc);
      for (int r = 0; r < 3; r++) {
        Register syn = cyc.cregs.at("syn" + std::to_string(r));
        for (uint32_t j = 0; j < syn.count; j++)
          CHECK(ex.clbits()[syn.start + j] == 0);
        Register cor = cyc.cregs.at("cor" + std::to_string(r));
        for (uint32_t j = 0; j < cor.count; j++)
          CHECK(ex.clbits()[cor.start + j] == 0);
      }
      LogicalStateReport rep = logical_state_check(ex.tableau(), code, 0);
      CHECK(rep.all_plus());
      CHECK(rep.logical_z == 1);
    }
  }
}
