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

#include <stdexcept>
#include <string>

#include "hft/bitvec.hpp"

namespace hft {

enum class PauliKind : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char pauli_char(PauliKind p) { return "IXZY"[int(p)]; }

// n-qubit Pauli operator. Qubit i carries I/X/Z/Y according to
// (x_i, z_i) = (0,0)/(1,0)/(0,1)/(1,1). Only the +-1 sign is tracked;
// imaginary phases are normalized away (Hermitian representative).
struct PauliString {
  size_t n = 0;
  BitVec x_bits;
  BitVec z_bits;
  bool negative = false;

  PauliString() = default;
  explicit PauliString(size_t n_) : n(n_), x_bits(n_), z_bits(n_) {}

  static PauliString identity(size_t n) { return PauliString(n); }

  static PauliString single(size_t n, size_t q, PauliKind p) {
    PauliString r(n);
    r.set(q, p);
    return r;
  }

  PauliKind get(size_t q) const {
    return PauliKind((x_bits.get(q) ? 1 : 0) | (z_bits.get(q) ? 2 : 0));
  }

  void set(size_t q, PauliKind p) {
    x_bits.set(q, int(p) & 1);
    z_bits.set(q, int(p) & 2);
  }

  size_t weight() const {
    size_t w = 0;
    for (size_t i = 0; i < n; i++)
      if (x_bits.get(i) || z_bits.get(i)) w++;
    return w;
  }

  bool is_identity() const { return !x_bits.any() && !z_bits.any(); }

  // Symplectic inner product: true iff the operators commute.
  bool commutes_with(const PauliString& o) const {
    if (n != o.n) throw std::invalid_argument("PauliString size mismatch");
    return !(x_bits.dot(o.z_bits) ^ z_bits.dot(o.x_bits));
  }

  // Pattern-wise product; sign tracks the real part only (any i factor from
  // anticommuting single-qubit pairs is dropped, which is all the error
  // bookkeeping here needs).
  PauliString operator*(const PauliString& o) const {
    if (n != o.n) throw std::invalid_argument("PauliString size mismatch");
    PauliString r(n);
    r.x_bits = x_bits;
    r.z_bits = z_bits;
    r.x_bits ^= o.x_bits;
    r.z_bits ^= o.z_bits;
    r.negative = negative ^ o.negative ^ (z_bits.dot(o.x_bits));
    return r;
  }

  bool operator==(const PauliString& o) const {
    return n == o.n && x_bits == o.x_bits && z_bits == o.z_bits &&
           negative == o.negative;
  }

  bool same_pattern(const PauliString& o) const {
    return n == o.n && x_bits == o.x_bits && z_bits == o.z_bits;
  }

  std::string to_string() const {
    std::string s;
    s += negative ? '-' : '+';
    for (size_t i = 0; i < n; i++) s += pauli_char(get(i));
    return s;
  }

  static PauliString from_string(const std::string& s) {
    size_t off = 0;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
      neg = s[0] == '-';
      off = 1;
    }
    PauliString r(s.size() - off);
    r.negative = neg;
    for (size_t i = off; i < s.size(); i++) {
      switch (s[i]) {
        case 'I': break;
        case 'X': r.set(i - off, PauliKind::X); break;
        case 'Z': r.set(i - off, PauliKind::Z); break;
        case 'Y': r.set(i - off, PauliKind::Y); break;
        default: throw std::invalid_argument("bad pauli char");
      }
    }
    return r;
  }
};

}  // namespace hft
