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

#include "hft/tableau.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hft {

StabilizerTableau::StabilizerTableau(size_t n, uint64_t seed, uint64_t stream)
    : n_(n), rng_(seed, stream) {
  if (n == 0) throw std::invalid_argument("tableau needs at least one qubit");
  rows_.resize(2 * n);
  for (auto& row : rows_) {
    row.x = BitVec(n);
    row.z = BitVec(n);
  }
  reset_all();
}

void StabilizerTableau::reset_all() {
  for (size_t i = 0; i < 2 * n_; i++) {
    rows_[i].x.clear();
    rows_[i].z.clear();
    rows_[i].r = 0;
    if (i < n_)
      rows_[i].x.set(i, true);  // destabilizer X_i
    else
      rows_[i].z.set(i - n_, true);  // stabilizer Z_i
  }
}

void StabilizerTableau::h(size_t q) {
  for (auto& row : rows_) {
    bool xb = row.x.get(q), zb = row.z.get(q);
    if (xb && zb) row.r ^= 2;
    row.x.set(q, zb);
    row.z.set(q, xb);
  }
}

void StabilizerTableau::s(size_t q) {
  for (auto& row : rows_) {
    bool xb = row.x.get(q), zb = row.z.get(q);
    if (xb && zb) row.r ^= 2;
    row.z.set(q, xb ^ zb);
  }
}

void StabilizerTableau::x(size_t q) {
  for (auto& row : rows_)
    if (row.z.get(q)) row.r ^= 2;
}

void StabilizerTableau::z(size_t q) {
  for (auto& row : rows_)
    if (row.x.get(q)) row.r ^= 2;
}

void StabilizerTableau::y(size_t q) {
  for (auto& row : rows_)
    if (row.x.get(q) ^ row.z.get(q)) row.r ^= 2;
}

void StabilizerTableau::cx(size_t c, size_t t) {
  if (c == t) throw std::invalid_argument("CX needs distinct targets");
  for (auto& row : rows_) {
    bool xc = row.x.get(c), zc = row.z.get(c);
    bool xt = row.x.get(t), zt = row.z.get(t);
    if (xc && zt && (xt == zc)) row.r ^= 2;
    row.x.set(t, xt ^ xc);
    row.z.set(c, zc ^ zt);
  }
}

void StabilizerTableau::apply(const CliffordGate& g) {
  if (g.q0 >= n_ || g.q1 >= n_)
    throw std::invalid_argument("gate target out of range");
  switch (g.kind) {
    case GateKind::H: h(g.q0); break;
    case GateKind::X: x(g.q0); break;
    case GateKind::Y: y(g.q0); break;
    case GateKind::Z: z(g.q0); break;
    case GateKind::S: s(g.q0); break;
    case GateKind::CX: cx(g.q0, g.q1); break;
  }
}

// Phase-exact row multiplication h <- h * i (AG rowsum). The per-qubit phase
// contribution g in {-1,0,+1} is accumulated word-wise via two popcounts.
void StabilizerTableau::rowsum(Row& h, const Row& i) const {
  size_t words = h.x.words().size();
  long total = 0;
  for (size_t w = 0; w < words; w++) {
    uint64_t x1 = i.x.words()[w], z1 = i.z.words()[w];
    uint64_t x2 = h.x.words()[w], z2 = h.z.words()[w];
    uint64_t pos = (x1 & ~z1 & z2 & x2) | (x1 & z1 & z2 & ~x2) |
                   (~x1 & z1 & x2 & ~z2);
    uint64_t neg = (x1 & ~z1 & z2 & ~x2) | (x1 & z1 & x2 & ~z2) |
                   (~x1 & z1 & x2 & z2);
    total += std::popcount(pos);
    total -= std::popcount(neg);
  }
  h.r = uint8_t(((h.r + i.r + total) % 4 + 4) % 4);
  h.x ^= i.x;
  h.z ^= i.z;
}

bool StabilizerTableau::measure_z(size_t q) {
  if (q >= n_) throw std::invalid_argument("measurement target out of range");
  // Random case: some stabilizer anticommutes with Z_q.
  size_t p = 2 * n_;
  for (size_t i = n_; i < 2 * n_; i++) {
    if (rows_[i].x.get(q)) {
      p = i;
      break;
    }
  }
  if (p < 2 * n_) {
    for (size_t i = 0; i < 2 * n_; i++) {
      if (i != p && rows_[i].x.get(q)) rowsum(rows_[i], rows_[p]);
    }
    rows_[p - n_] = rows_[p];
    rows_[p].x.clear();
    rows_[p].z.clear();
    rows_[p].z.set(q, true);
    bool outcome = rng_.next_bit();
    rows_[p].r = outcome ? 2 : 0;
    return outcome;
  }
  // Deterministic case: synthesize Z_q from stabilizers indexed by the
  // destabilizers that anticommute with it.
  Row scratch;
  scratch.x = BitVec(n_);
  scratch.z = BitVec(n_);
  scratch.r = 0;
  for (size_t i = 0; i < n_; i++) {
    if (rows_[i].x.get(q)) rowsum(scratch, rows_[i + n_]);
  }
  return scratch.r == 2;
}

void StabilizerTableau::reset_qubit(size_t q) {
  if (measure_z(q)) x(q);
}

bool StabilizerTableau::row_anticommutes(const Row& row,
                                         const PauliString& p) const {
  return row.x.dot(p.z_bits) ^ row.z.dot(p.x_bits);
}

void StabilizerTableau::apply_pauli(const PauliString& p) {
  if (p.n != n_) throw std::invalid_argument("pauli size mismatch");
  for (auto& row : rows_)
    if (row_anticommutes(row, p)) row.r ^= 2;
}

std::optional<int> StabilizerTableau::expectation(const PauliString& p) const {
  if (p.n != n_) throw std::invalid_argument("pauli size mismatch");
  for (size_t i = n_; i < 2 * n_; i++) {
    if (row_anticommutes(rows_[i], p)) return std::nullopt;
  }
  // P commutes with the whole group, so +-P is a product of stabilizer rows.
  // Gaussian-eliminate a working copy against P's support.
  std::vector<Row> work(rows_.begin() + n_, rows_.end());
  Row acc;
  acc.x = BitVec(n_);
  acc.z = BitVec(n_);
  acc.r = 0;
  std::vector<bool> used(work.size(), false);
  // Reduce over symplectic coordinates (x then z per qubit).
  for (size_t coord = 0; coord < 2 * n_; coord++) {
    size_t q = coord >> 1;
    bool is_x = !(coord & 1);
    auto bit = [&](const Row& r) {
      return is_x ? r.x.get(q) : r.z.get(q);
    };
    size_t pivot = work.size();
    for (size_t i = 0; i < work.size(); i++) {
      if (!used[i] && bit(work[i])) {
        pivot = i;
        break;
      }
    }
    if (pivot == work.size()) continue;
    used[pivot] = true;
    for (size_t i = 0; i < work.size(); i++) {
      if (i != pivot && !used[i] && bit(work[i])) rowsum(work[i], work[pivot]);
    }
    bool target_bit = is_x ? (p.x_bits.get(q) ^ acc.x.get(q))
                           : (p.z_bits.get(q) ^ acc.z.get(q));
    if (target_bit) rowsum(acc, work[pivot]);
  }
  if (acc.x != p.x_bits || acc.z != p.z_bits) return std::nullopt;
  bool acc_neg = acc.r == 2;
  return (acc_neg == p.negative) ? +1 : -1;
}

std::vector<PauliString> StabilizerTableau::canonical_stabilizers() const {
  std::vector<Row> work(rows_.begin() + n_, rows_.end());
  size_t rank = 0;
  for (size_t coord = 0; coord < 2 * n_ && rank < work.size(); coord++) {
    size_t q = coord >> 1;
    bool is_x = !(coord & 1);
    auto bit = [&](const Row& r) {
      return is_x ? r.x.get(q) : r.z.get(q);
    };
    size_t pivot = work.size();
    for (size_t i = rank; i < work.size(); i++) {
      if (bit(work[i])) {
        pivot = i;
        break;
      }
    }
    if (pivot == work.size()) continue;
    std::swap(work[rank], work[pivot]);
    for (size_t i = 0; i < work.size(); i++) {
      if (i != rank && bit(work[i])) rowsum(work[i], work[rank]);
    }
    rank++;
  }
  std::vector<PauliString> out;
  out.reserve(work.size());
  for (const auto& row : work) {
    PauliString p(n_);
    p.x_bits = row.x;
    p.z_bits = row.z;
    p.negative = row.r == 2;
    out.push_back(p);
  }
  return out;
}

bool StabilizerTableau::check_invariants() const {
  for (size_t i = n_; i < 2 * n_; i++) {
    if (rows_[i].r != 0 && rows_[i].r != 2) return false;
    for (size_t j = i + 1; j < 2 * n_; j++) {
      bool anti = rows_[i].x.dot(rows_[j].z) ^ rows_[i].z.dot(rows_[j].x);
      if (anti) return false;
    }
  }
  // Full rank: canonical form must produce 2n pivot coordinates across
  // the stabilizer half.
  auto canon = canonical_stabilizers();
  for (const auto& p : canon) {
    if (!p.x_bits.any() && !p.z_bits.any()) return false;
  }
  return true;
}

}  // namespace hft
