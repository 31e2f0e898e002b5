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

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace hft {

// Fixed-length bit vector packed into 64-bit words. XOR/AND over whole rows
// is the hot path of both the tableau and the GF(2) linear algebra.
class BitVec {
 public:
  BitVec() : n_(0) {}
  explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }

  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  void operator^=(const BitVec& o) {
    for (size_t i = 0; i < w_.size(); i++) w_[i] ^= o.w_[i];
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }

  size_t popcount() const {
    size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  // parity of <this, other> over AND, i.e. sum_i a_i b_i mod 2.
  bool dot(const BitVec& o) const {
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); i++) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
  }

  int lowest_set() const {
    for (size_t i = 0; i < w_.size(); i++)
      if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }
  bool operator<(const BitVec& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = w_.size(); i-- > 0;)
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
  }

  // Low 64 bits; callers must know n <= 64.
  uint64_t low_word() const { return w_.empty() ? 0 : w_[0]; }

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

  std::string to_string() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; i++)
      if (get(i)) s[i] = '1';
    return s;
  }

 private:
  size_t n_;
  std::vector<uint64_t> w_;
};

}  // namespace hft
