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

#include "hft/css.hpp"

#include <algorithm>
#include <functional>

namespace hft {

BinaryMatrix hamming_parity_check() {
  return BinaryMatrix::from_rows({
      {0, 0, 0, 1, 1, 1, 1},
      {0, 1, 1, 0, 0, 1, 1},
      {1, 0, 1, 0, 1, 0, 1},
  });
}

std::vector<std::pair<BitVec, BitVec>> CssCode::stabilizer_group_patterns()
    const {
  size_t rz = hz.rows(), rx = hx.rows();
  std::vector<std::pair<BitVec, BitVec>> out;
  out.reserve(size_t(1) << (rz + rx));
  for (uint64_t mx = 0; mx < (uint64_t(1) << rx); mx++) {
    BitVec xpat(n);
    for (size_t r = 0; r < rx; r++)
      if ((mx >> r) & 1) xpat ^= hx.row(r);
    for (uint64_t mz = 0; mz < (uint64_t(1) << rz); mz++) {
      BitVec zpat(n);
      for (size_t r = 0; r < rz; r++)
        if ((mz >> r) & 1) zpat ^= hz.row(r);
      out.emplace_back(xpat, zpat);
    }
  }
  return out;
}

Syndrome CssCode::syndrome_of(const PauliString& e) const {
  if (e.n != n) throw std::invalid_argument("error size mismatch");
  Syndrome s;
  s.z_bits = hz.mul_vec(e.x_bits);
  s.x_bits = hx.mul_vec(e.z_bits);
  return s;
}

PauliString CssCode::decode(const Syndrome& s) const {
  auto it = decoder_table.find(s.key());
  if (it == decoder_table.end())
    throw std::invalid_argument("syndrome missing from decoder table");
  return it->second;
}

size_t CssCode::coset_weight(const PauliString& e) const {
  size_t best = e.weight();
  for (const auto& [xp, zp] : stabilizer_group_patterns()) {
    PauliString f(n);
    f.x_bits = e.x_bits;
    f.z_bits = e.z_bits;
    f.x_bits ^= xp;
    f.z_bits ^= zp;
    best = std::min(best, f.weight());
  }
  return best;
}

namespace {

// Lowest-weight representative among the nonzero kernel vectors outside the
// given row space; exhaustive for small kernels, first basis vector outside
// the row space otherwise.
BitVec pick_logical(const std::vector<BitVec>& kernel,
                    const BinaryMatrix& excluded_rowspace, size_t n) {
  if (kernel.size() <= 20) {
    BitVec best;
    size_t best_w = n + 1;
    for (uint64_t m = 1; m < (uint64_t(1) << kernel.size()); m++) {
      BitVec v(n);
      for (size_t i = 0; i < kernel.size(); i++)
        if ((m >> i) & 1) v ^= kernel[i];
      if (excluded_rowspace.row_space_contains(v)) continue;
      size_t w = v.popcount();
      if (w < best_w || (w == best_w && v < best)) {
        best_w = w;
        best = v;
      }
    }
    if (best_w <= n) return best;
  } else {
    for (const auto& v : kernel) {
      if (!excluded_rowspace.row_space_contains(v)) return v;
    }
  }
  throw DegenerateCodeError();
}

}  // namespace

CssCode css_from_matrices(const BinaryMatrix& hz, const BinaryMatrix& hx,
                          size_t d) {
  if (hz.cols() != hx.cols())
    throw std::invalid_argument("hz and hx must have equal column counts");
  size_t bad_a = 0, bad_b = 0;
  if (!hx.orthogonal_rows(hz, &bad_a, &bad_b))
    throw CssConditionError(bad_a, bad_b);

  CssCode code;
  code.n = hz.cols();
  code.d = d;
  code.hz = hz;
  code.hx = hx;
  size_t rz = hz.rank(), rx = hx.rank();
  if (code.n < rz + rx + 1) throw DegenerateCodeError();
  code.k = code.n - rz - rx;

  // X-type logical: in ker(hz), outside rowspace(hx). Z-type symmetric.
  code.logical_x = PauliString(code.n);
  code.logical_x.x_bits = pick_logical(hz.kernel_basis(), hx, code.n);
  code.logical_z = PauliString(code.n);
  code.logical_z.z_bits = pick_logical(hx.kernel_basis(), hz, code.n);
  if (code.logical_x.commutes_with(code.logical_z)) {
    // Kernel search found commuting representatives; fix up the Z side by
    // adding any kernel vector restoring odd overlap.
    for (const auto& v : hx.kernel_basis()) {
      PauliString cand(code.n);
      cand.z_bits = code.logical_z.z_bits;
      cand.z_bits ^= v;
      if (!hz.row_space_contains(cand.z_bits) &&
          !code.logical_x.commutes_with(cand)) {
        code.logical_z = cand;
        break;
      }
    }
  }
  if (code.logical_x.commutes_with(code.logical_z))
    throw DegenerateCodeError();

  build_decoder_table(code);
  return code;
}

CssCode steane_code() {
  BinaryMatrix h = hamming_parity_check();
  CssCode code = css_from_matrices(h, h, 3);
  // Fix the Steane logicals to the conventional weight-7 transversal strings.
  code.logical_x = PauliString(7);
  code.logical_z = PauliString(7);
  for (size_t i = 0; i < 7; i++) {
    code.logical_x.x_bits.set(i, true);
    code.logical_z.z_bits.set(i, true);
  }
  return code;
}

CssCode repetition_code_3() {
  BinaryMatrix hz = BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
  BinaryMatrix hx(0, 3);
  return css_from_matrices(hz, hx, 3);
}

void build_decoder_table(CssCode& code) {
  code.decoder_table.clear();
  size_t t = (code.d - 1) / 2;
  size_t total = size_t(1) << code.num_stabs();

  // Enumerate Paulis in (weight, index-lexicographic) order so ties resolve
  // to the lowest-index representative.
  std::vector<size_t> qubits(code.n);
  for (size_t i = 0; i < code.n; i++) qubits[i] = i;

  struct Entry {
    PauliString p;
    size_t weight;
  };
  std::map<uint64_t, Entry> table;

  // The distance promise only covers error sectors the code detects: with
  // no X-stabilizers (hx empty) phase errors are invisible by construction
  // and collide with the identity without violating anything.
  auto guardable = [&](const PauliString& e) {
    if (e.z_bits.any() && code.hx.rows() == 0) return false;
    if (e.x_bits.any() && code.hz.rows() == 0) return false;
    return true;
  };

  auto visit = [&](const PauliString& e, size_t w, bool guarded) {
    Syndrome s = code.syndrome_of(e);
    auto it = table.find(s.key());
    if (it == table.end()) {
      table.emplace(s.key(), Entry{e, w});
      return;
    }
    if (guarded && it->second.weight <= t && w <= t && guardable(e) &&
        guardable(it->second.p)) {
      PauliString prod = it->second.p * e;
      if (!code.in_stabilizer_group(prod))
        throw DistanceViolationError(
            "two weight-<=" + std::to_string(t) +
            " errors share a syndrome but differ by a logical: " +
            it->second.p.to_string() + " vs " + e.to_string());
    }
  };

  // Recursive enumeration of errors of exactly weight w.
  std::vector<PauliKind> kinds = {PauliKind::X, PauliKind::Z, PauliKind::Y};
  std::function<void(PauliString&, size_t, size_t, size_t, bool)> rec =
      [&](PauliString& e, size_t start, size_t remaining, size_t w,
          bool guarded) {
        if (remaining == 0) {
          visit(e, w, guarded);
          return;
        }
        for (size_t q = start; q + remaining <= code.n + 1 && q < code.n;
             q++) {
          for (PauliKind k : kinds) {
            e.set(q, k);
            rec(e, q + 1, remaining - 1, w, guarded);
            e.set(q, PauliKind::I);
          }
        }
      };

  size_t max_w = std::min(code.n, t + 3);
  for (size_t w = 0; w <= max_w && table.size() < total; w++) {
    PauliString e(code.n);
    bool guarded = w <= t;
    if (w == 0)
      visit(e, 0, guarded);
    else
      rec(e, 0, w, w, guarded);
  }

  for (auto& [k, v] : table) code.decoder_table.emplace(k, v.p);
}

LogicalStateReport logical_state_check(const StabilizerTableau& t,
                                       const CssCode& code,
                                       size_t block_offset) {
  if (block_offset + code.n > t.num_qubits())
    throw std::invalid_argument("block out of range");
  auto embed = [&](const PauliString& p) {
    PauliString q(t.num_qubits());
    for (size_t i = 0; i < code.n; i++)
      q.set(block_offset + i, p.get(i));
    return q;
  };
  auto sign_of = [&](const PauliString& p) {
    auto e = t.expectation(embed(p));
    return e ? *e : 0;
  };
  LogicalStateReport rep;
  for (size_t r = 0; r < code.num_z_stabs(); r++)
    rep.z_stab.push_back(sign_of(code.z_stabilizer(r)));
  for (size_t r = 0; r < code.num_x_stabs(); r++)
    rep.x_stab.push_back(sign_of(code.x_stabilizer(r)));
  rep.logical_z = sign_of(code.logical_z);
  rep.logical_x = sign_of(code.logical_x);
  return rep;
}

}  // namespace hft
