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

namespace hft {

// Counter-based generator: every draw is a hash of (seed, stream, counter).
// Streams are keyed by shot index, so parallel shots draw independent,
// reproducible sequences regardless of scheduling order.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) : state_(init_key(seed, stream)) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bit() { return next_u64() >> 63; }

  // Uniform in [0, bound). Lemire reduction; bias is < 2^-32 for our bounds.
  uint32_t next_below(uint32_t bound) {
    return uint32_t((unsigned __int128)(next_u64()) * bound >> 64);
  }

 private:
  static uint64_t init_key(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace hft
