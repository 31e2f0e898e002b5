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

#include <vector>

#include "hft/bitvec.hpp"

namespace hft {

// Dense matrix over GF(2), one BitVec per row. All arithmetic is mod 2.
class BinaryMatrix {
 public:
  BinaryMatrix() : rows_(0), cols_(0) {}
  BinaryMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return BinaryMatrix();
    BinaryMatrix m(rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); r++)
      for (size_t c = 0; c < rows[r].size(); c++)
        if (rows[r][c]) m.set(r, c, true);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const { return data_[r].get(c); }
  void set(size_t r, size_t c, bool v) { data_[r].set(c, v); }
  const BitVec& row(size_t r) const { return data_[r]; }
  BitVec& row(size_t r) { return data_[r]; }

  // y = M v over GF(2).
  BitVec mul_vec(const BitVec& v) const {
    BitVec out(rows_);
    for (size_t r = 0; r < rows_; r++) out.set(r, data_[r].dot(v));
    return out;
  }

  // True iff A * B^T = 0 (every row of A orthogonal to every row of B).
  // On failure, *bad_a / *bad_b name the offending row pair.
  bool orthogonal_rows(const BinaryMatrix& b, size_t* bad_a = nullptr,
                       size_t* bad_b = nullptr) const {
    for (size_t i = 0; i < rows_; i++) {
      for (size_t j = 0; j < b.rows_; j++) {
        if (data_[i].dot(b.data_[j])) {
          if (bad_a) *bad_a = i;
          if (bad_b) *bad_b = j;
          return false;
        }
      }
    }
    return true;
  }

  size_t rank() const { return BinaryMatrix(*this).eliminate(); }

  // In-place Gaussian elimination to row echelon form; returns rank.
  size_t eliminate() {
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; c++) {
      size_t pivot = rows_;
      for (size_t i = r; i < rows_; i++) {
        if (data_[i].get(c)) {
          pivot = i;
          break;
        }
      }
      if (pivot == rows_) continue;
      std::swap(data_[r], data_[pivot]);
      for (size_t i = 0; i < rows_; i++) {
        if (i != r && data_[i].get(c)) data_[i] ^= data_[r];
      }
      r++;
    }
    return r;
  }

  // Pivot column of each echelon row after eliminate().
  std::vector<size_t> pivot_columns() const {
    std::vector<size_t> out;
    for (size_t r = 0; r < rows_; r++) {
      int c = data_[r].lowest_set();
      if (c >= 0) out.push_back(size_t(c));
    }
    return out;
  }

  // Basis of { v : M v = 0 }.
  std::vector<BitVec> kernel_basis() const {
    BinaryMatrix e(*this);
    e.eliminate();
    std::vector<int> pivot_of_col(cols_, -1);
    size_t r = 0;
    for (; r < e.rows_; r++) {
      int c = e.data_[r].lowest_set();
      if (c < 0) break;
      pivot_of_col[c] = int(r);
    }
    std::vector<BitVec> basis;
    for (size_t c = 0; c < cols_; c++) {
      if (pivot_of_col[c] >= 0) continue;
      BitVec v(cols_);
      v.set(c, true);
      for (size_t cc = 0; cc < cols_; cc++) {
        if (pivot_of_col[cc] >= 0 && e.data_[pivot_of_col[cc]].get(c))
          v.set(cc, true);
      }
      basis.push_back(v);
    }
    return basis;
  }

  // True iff v lies in the row space.
  bool row_space_contains(const BitVec& v) const {
    BinaryMatrix e(*this);
    e.eliminate();
    BitVec w = v;
    for (size_t r = 0; r < e.rows_; r++) {
      int c = e.data_[r].lowest_set();
      if (c < 0) break;
      if (w.get(size_t(c))) w ^= e.data_[r];
    }
    return !w.any();
  }

  bool operator==(const BinaryMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  size_t rows_, cols_;
  std::vector<BitVec> data_;
};

}  // namespace hft
