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

#include <cstdint>
#include <optional>
#include <vector>

#include "hft/pauli.hpp"
#include "hft/rng.hpp"

namespace hft {

enum class GateKind : uint8_t { H, X, Y, Z, S, CX };

struct CliffordGate {
  GateKind kind;
  uint32_t q0 = 0;
  uint32_t q1 = 0;  // CX target; unused otherwise

  static CliffordGate g1(GateKind k, uint32_t q) { return {k, q, q}; }
  static CliffordGate cx(uint32_t c, uint32_t t) { return {GateKind::CX, c, t}; }
  bool is_two_qubit() const { return kind == GateKind::CX; }
};

// Destabilizer/stabilizer tableau over GF(2) in the Aaronson-Gottesman
// layout: rows 0..n-1 are destabilizers, n..2n-1 stabilizers. Measurement
// randomness comes from the owned counter-based generator, so a fixed
// (seed, stream) pair replays bit-identical outcome sequences.
class StabilizerTableau {
 public:
  StabilizerTableau(size_t n, uint64_t seed, uint64_t stream = 0);

  size_t num_qubits() const { return n_; }

  void reset_all();

  void apply(const CliffordGate& g);
  void h(size_t q);
  void s(size_t q);
  void x(size_t q);
  void y(size_t q);
  void z(size_t q);
  void cx(size_t c, size_t t);

  // Z-basis measurement; collapses the state. Random outcomes draw from the
  // owned generator.
  bool measure_z(size_t q);

  // Measure, then flip back to |0>.
  void reset_qubit(size_t q);

  // Conjugate the state by an error Pauli.
  void apply_pauli(const PauliString& p);

  // +1 / -1 if +-P is in the stabilizer group, nullopt if measuring P would
  // be random. Does not disturb the state.
  std::optional<int> expectation(const PauliString& p) const;

  // Stabilizer half in canonical (reduced row echelon, sign-tracked) form;
  // equal canonical forms mean equal states.
  std::vector<PauliString> canonical_stabilizers() const;

  // Debug validator: rows mutually commute, stabilizer half has full rank.
  bool check_invariants() const;

  CounterRng& rng() { return rng_; }

 private:
  struct Row {
    BitVec x, z;
    uint8_t r = 0;  // phase exponent mod 4; rows keep r in {0, 2}
  };

  void rowsum(Row& h, const Row& i) const;
  bool row_anticommutes(const Row& row, const PauliString& p) const;

  size_t n_;
  std::vector<Row> rows_;  // 2n rows
  CounterRng rng_;
};

inline StabilizerTableau new_tableau(size_t n, uint64_t seed,
                                     uint64_t stream = 0) {
  return StabilizerTableau(n, seed, stream);
}

inline bool pauli_commutes(const PauliString& a, const PauliString& b) {
  return a.commutes_with(b);
}

}  // namespace hft
