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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hft/binary_matrix.hpp"
#include "hft/pauli.hpp"
#include "hft/tableau.hpp"

namespace hft {

struct CssConditionError : std::runtime_error {
  size_t hx_row, hz_row;
  CssConditionError(size_t a, size_t b)
      : std::runtime_error("CSS condition violated: hx row " +
                           std::to_string(a) + " anticommutes with hz row " +
                           std::to_string(b)),
        hx_row(a),
        hz_row(b) {}
};

struct DegenerateCodeError : std::runtime_error {
  DegenerateCodeError() : std::runtime_error("code has no logical qubit") {}
};

struct DistanceViolationError : std::runtime_error {
  explicit DistanceViolationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Measurement record of all stabilizers at one time index. z_bits come from
// the Z-stabilizers (they trip on bit flips), x_bits from the X-stabilizers.
struct Syndrome {
  BitVec z_bits;
  BitVec x_bits;
  int round = 0;

  bool any() const { return z_bits.any() || x_bits.any(); }
  bool operator==(const Syndrome& o) const {
    return z_bits == o.z_bits && x_bits == o.x_bits;
  }

  // Packed key for the lookup decoder; requires < 64 total stabilizers.
  uint64_t key() const {
    return z_bits.low_word() | (x_bits.low_word() << z_bits.size());
  }
};

// A CSS code. Qubits are 0-based internally; the 1-based labels used in
// reports match the classic generator notation (report qubit j = internal j-1).
struct CssCode {
  size_t n = 0;
  size_t k = 0;
  size_t d = 0;
  BinaryMatrix hz;  // Z-stabilizer supports; detect bit flips
  BinaryMatrix hx;  // X-stabilizer supports; detect phase flips
  PauliString logical_x;
  PauliString logical_z;
  std::map<uint64_t, PauliString> decoder_table;

  size_t num_z_stabs() const { return hz.rows(); }
  size_t num_x_stabs() const { return hx.rows(); }
  size_t num_stabs() const { return hz.rows() + hx.rows(); }

  PauliString z_stabilizer(size_t r) const {
    PauliString p(n);
    p.z_bits = hz.row(r);
    return p;
  }
  PauliString x_stabilizer(size_t r) const {
    PauliString p(n);
    p.x_bits = hx.row(r);
    return p;
  }

  // All 2^(rz+rx) stabilizer group elements as (x_pattern, z_pattern) pairs.
  // Only sensible for small codes; used by decoders and oracles.
  std::vector<std::pair<BitVec, BitVec>> stabilizer_group_patterns() const;

  // True iff the Pauli pattern is a product of stabilizer generators
  // (x support in rowspace(hx) and z support in rowspace(hz)).
  bool in_stabilizer_group(const PauliString& p) const {
    return hx.row_space_contains(p.x_bits) && hz.row_space_contains(p.z_bits);
  }

  Syndrome syndrome_of(const PauliString& e) const;
  PauliString decode(const Syndrome& s) const;

  // Residual weight of e modulo the stabilizer group.
  size_t coset_weight(const PauliString& e) const;
};

// The exact 3x7 parity check matrix of the Hamming [7,4,3] code. Column j
// (0-based) carries the conventional 1-based label j+1.
BinaryMatrix hamming_parity_check();

// Steane [[7,1,3]]: hz = hx = Hamming matrix, logicals X^7 / Z^7.
CssCode steane_code();

// 3-qubit repetition code protecting against X errors (hz = [110;011]).
CssCode repetition_code_3();

// Generic CSS construction; throws CssConditionError / DegenerateCodeError.
CssCode css_from_matrices(const BinaryMatrix& hz, const BinaryMatrix& hx,
                          size_t d);

// Fills code.decoder_table: every syndrome reachable by weight <= (d-1)/2
// maps to a minimum-weight correction; remaining syndromes get the
// lowest-index minimum-weight coset representative from a bounded search.
void build_decoder_table(CssCode& code);

// Non-destructive read of each stabilizer's eigenvalue plus the logical
// operators' group membership on the block starting at block_offset.
struct LogicalStateReport {
  std::vector<int> z_stab;  // +1 / -1 / 0 (indeterminate)
  std::vector<int> x_stab;
  int logical_z = 0;
  int logical_x = 0;

  bool all_plus() const {
    for (int v : z_stab)
      if (v != 1) return false;
    for (int v : x_stab)
      if (v != 1) return false;
    return true;
  }
};

LogicalStateReport logical_state_check(const StabilizerTableau& t,
                                       const CssCode& code,
                                       size_t block_offset);

}  // namespace hft
