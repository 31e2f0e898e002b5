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
#include "hft/css.hpp"

using namespace hft;

namespace {
// 1-based qubit label j -> internal index j-1
size_t pq(size_t j) { return j - 1; }
}  // namespace

TEST_CASE("hamming parity check matrix") {
  BinaryMatrix h = hamming_parity_check();
  REQUIRE(h.rows() == 3);
  REQUIRE(h.cols() == 7);
  const int expect[3][7] = {
      {0, 0, 0, 1, 1, 1, 1}, {0, 1, 1, 0, 0, 1, 1}, {1, 0, 1, 0, 1, 0, 1}};
  for (size_t r = 0; r < 3; r++)
    for (size_t c = 0; c < 7; c++) CHECK(h.get(r, c) == (expect[r][c] == 1));

  // H * 0 = 0
  CHECK_FALSE(h.mul_vec(BitVec(7)).any());

  // H * e_5 = (1,0,1) for qubit label 5
  BitVec e5(7);
  e5.set(pq(5), true);
  BitVec s = h.mul_vec(e5);
  CHECK(s.get(0));
  CHECK_FALSE(s.get(1));
  CHECK(s.get(2));
}

TEST_CASE("steane code structure") {
  CssCode code = steane_code();
  CHECK(code.n == 7);
  CHECK(code.k == 1);
  CHECK(code.d == 3);
  // Self-duality, bit for bit.
  CHECK(code.hz == code.hx);

  // g_2^X supports qubits {2,3,6,7} (1-based labels).
  PauliString g2x = code.x_stabilizer(1);
  for (size_t j = 1; j <= 7; j++) {
    bool in_support = j == 2 || j == 3 || j == 6 || j == 7;
    CHECK(g2x.get(pq(j)) == (in_support ? PauliKind::X : PauliKind::I));
  }

  // All 9 cross-type stabilizer pairs commute.
  for (size_t a = 0; a < 3; a++)
    for (size_t b = 0; b < 3; b++)
      CHECK(pauli_commutes(code.z_stabilizer(a), code.x_stabilizer(b)));

  // Logical operators: weight-7 transversal strings that anticommute.
  CHECK(code.logical_x.weight() == 7);
  CHECK(code.logical_z.weight() == 7);
  CHECK_FALSE(pauli_commutes(code.logical_x, code.logical_z));
  for (size_t a = 0; a < 3; a++) {
    CHECK(pauli_commutes(code.logical_x, code.z_stabilizer(a)));
    CHECK(pauli_commutes(code.logical_z, code.x_stabilizer(a)));
  }
}

TEST_CASE("css_from_matrices rejects non-orthogonal inputs") {
  BinaryMatrix hz = BinaryMatrix::from_rows({{1, 1, 0}});
  BinaryMatrix hx = BinaryMatrix::from_rows({{1, 0, 0}});
  CHECK_THROWS_AS(css_from_matrices(hz, hx, 3), CssConditionError);

  BinaryMatrix hz2 = BinaryMatrix::from_rows({{1, 1}});
  BinaryMatrix hx2 = BinaryMatrix::from_rows({{1, 1}});
  CHECK_THROWS_AS(css_from_matrices(hz2, hx2, 2), DegenerateCodeError);

  CHECK_THROWS_AS(
      css_from_matrices(hz, BinaryMatrix::from_rows({{1, 1, 1, 1}}), 3),
      std::invalid_argument);
}

TEST_CASE("hamming+hamming reproduces the steane structure") {
  BinaryMatrix h = hamming_parity_check();
  CssCode generic = css_from_matrices(h, h, 3);
  CssCode steane = steane_code();
  CHECK(generic.n == 7);
  CHECK(generic.k == 1);
  CHECK(generic.hz == steane.hz);
  CHECK(generic.hx == steane.hx);
  // Generic construction picks minimum-weight logicals (weight 3 for
  // Steane); they must commute with all stabilizers and anticommute with
  // each other.
  CHECK(generic.logical_x.weight() == 3);
  CHECK(generic.logical_z.weight() == 3);
  CHECK_FALSE(pauli_commutes(generic.logical_x, generic.logical_z));
}

TEST_CASE("3-qubit repetition code corrects single X errors") {
  CssCode rep = repetition_code_3();
  CHECK(rep.n == 3);
  CHECK(rep.k == 1);
  for (size_t q = 0; q < 3; q++) {
    PauliString e = PauliString::single(3, q, PauliKind::X);
    PauliString corr = rep.decode(rep.syndrome_of(e));
    PauliString prod = corr * e;
    CHECK(rep.in_stabilizer_group(prod));
  }
}

TEST_CASE("syndrome_of") {
  CssCode code = steane_code();
  CHECK_FALSE(code.syndrome_of(PauliString::identity(7)).any());

  PauliString x5 = PauliString::single(7, pq(5), PauliKind::X);
  Syndrome s = code.syndrome_of(x5);
  CHECK(s.z_bits.get(0));
  CHECK_FALSE(s.z_bits.get(1));
  CHECK(s.z_bits.get(2));
  CHECK_FALSE(s.x_bits.any());

  // Y on qubit label 3 trips both families with column 3 = (0,1,1).
  PauliString y3 = PauliString::single(7, pq(3), PauliKind::Y);
  Syndrome sy = code.syndrome_of(y3);
  CHECK_FALSE(sy.z_bits.get(0));
  CHECK(sy.z_bits.get(1));
  CHECK(sy.z_bits.get(2));
  CHECK_FALSE(sy.x_bits.get(0));
  CHECK(sy.x_bits.get(1));
  CHECK(sy.x_bits.get(2));

  CHECK_THROWS_AS(code.syndrome_of(PauliString::identity(6)),
                  std::invalid_argument);
}

TEST_CASE("syndrome linearity") {
  CssCode code = steane_code();
  CounterRng rng(2024, 0);
  for (int trial = 0; trial < 50; trial++) {
    PauliString a(7), b(7);
    for (size_t q = 0; q < 7; q++) {
      a.set(q, PauliKind(rng.next_below(4)));
      b.set(q, PauliKind(rng.next_below(4)));
    }
    Syndrome sa = code.syndrome_of(a), sb = code.syndrome_of(b);
    Syndrome sab = code.syndrome_of(a * b);
    BitVec zx = sa.z_bits;
    zx ^= sb.z_bits;
    BitVec xx = sa.x_bits;
    xx ^= sb.x_bits;
    CHECK(sab.z_bits == zx);
    CHECK(sab.x_bits == xx);
  }
}

TEST_CASE("decoder: exhaustive single-error oracle") {
  CssCode code = steane_code();
  // All-zero syndrome maps to the identity.
  Syndrome zero;
  zero.z_bits = BitVec(3);
  zero.x_bits = BitVec(3);
  CHECK(code.decode(zero).is_identity());

  // X5 from its syndrome (X is what anticommutes
  // with the tripped Z-stabilizers, verified here exhaustively).
  PauliString x5 = PauliString::single(7, pq(5), PauliKind::X);
  CHECK(code.decode(code.syndrome_of(x5)) == x5);

  // decode(syndrome(e)) * e in the stabilizer group for all 21 weight-1
  // Paulis.
  for (size_t q = 0; q < 7; q++) {
    for (PauliKind k : {PauliKind::X, PauliKind::Z, PauliKind::Y}) {
      PauliString e = PauliString::single(7, q, k);
      PauliString corr = code.decode(code.syndrome_of(e));
      CHECK(code.in_stabilizer_group(corr * e));
    }
  }
}

TEST_CASE("decoder covers all 64 syndromes with coset representatives") {
  CssCode code = steane_code();
  CHECK(code.decoder_table.size() == 64);
  // Every entry reproduces its own syndrome.
  for (const auto& [key, corr] : code.decoder_table) {
    CHECK(code.syndrome_of(corr).key() == key);
  }
}

TEST_CASE("coset weight") {
  CssCode code = steane_code();
  // A full stabilizer support is trivial modulo the group.
  PauliString g1z = code.z_stabilizer(0);
  CHECK(code.coset_weight(g1z) == 0);
  // A two-qubit X error is a genuine weight-2 coset.
  PauliString e(7);
  e.set(pq(6), PauliKind::X);
  e.set(pq(7), PauliKind::X);
  CHECK(code.coset_weight(e) == 2);
  // Weight-3 suffix of a stabilizer support reduces to weight 1.
  PauliString suf(7);
  suf.set(pq(5), PauliKind::Z);
  suf.set(pq(6), PauliKind::Z);
  suf.set(pq(7), PauliKind::Z);
  CHECK(code.coset_weight(suf) == 1);
}

TEST_CASE("logical_state_check on encoded states") {
  CssCode code = steane_code();
  Circuit enc = build_encoder(code);
  StabilizerTableau t(7, 11);
  for (const auto& ins : enc.instructions) {
    CliffordGate g;
    g.kind = ins.gate;
    g.q0 = ins.q0;
    g.q1 = ins.q1;
    t.apply(g);
  }
  LogicalStateReport rep = logical_state_check(t, code, 0);
  CHECK(rep.all_plus());
  CHECK(rep.logical_z == 1);

  // Logical flip: stabilizers unchanged, Z_L sign flips.
  t.apply_pauli(code.logical_x);
  rep = logical_state_check(t, code, 0);
  CHECK(rep.all_plus());
  CHECK(rep.logical_z == -1);

  // Single X5: g1^Z and g3^Z report -1.
  t.apply_pauli(code.logical_x);  // undo
  t.apply_pauli(PauliString::single(7, pq(5), PauliKind::X));
  rep = logical_state_check(t, code, 0);
  CHECK(rep.z_stab[0] == -1);
  CHECK(rep.z_stab[1] == 1);
  CHECK(rep.z_stab[2] == -1);
}
