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
#include <vector>

#include "hft/circuit.hpp"
#include "hft/css.hpp"

namespace hft {

enum class ExtractionMode { standard, cat, steane };
enum class ReadoutPolicy { sequential, batched };
enum class StabType { Z, X };
enum class AncillaBasis { zero_l, plus_l };

const char* mode_name(ExtractionMode m);
ExtractionMode mode_from_name(const std::string& s);
const char* readout_name(ReadoutPolicy r);
ReadoutPolicy readout_from_name(const std::string& s);

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct SchedulerConfig {
  ExtractionMode mode = ExtractionMode::standard;
  ReadoutPolicy readout = ReadoutPolicy::batched;
  int rounds = 1;
  int verify = 2;             // cat: extra verification ancillas per stabilizer
  int max_prep_attempts = 3;  // steane and cat retry budget
  bool swap_policy = true;    // steane: swap blocks on exhausted preparation
  bool stable_recovery = true;  // correct only when consecutive rounds agree
  bool pauli_frame_recovery = false;  // track corrections instead of applying

  void check() const {
    if (rounds < 1) throw ConfigError("rounds must be >= 1");
    if (mode == ExtractionMode::cat && verify < 1)
      throw ConfigError("cat mode needs verify >= 1");
    if (mode == ExtractionMode::steane && max_prep_attempts < 1)
      throw ConfigError("steane mode needs max_prep_attempts >= 1");
  }
};

// Fixed row-reduced structure of the encoding circuit: one H per hx row
// pivot, CNOT fanout from each pivot across the rest of its row.
struct EncoderPlan {
  std::vector<size_t> pivots;
  std::vector<std::vector<size_t>> fanouts;  // per pivot, targets in order
};
EncoderPlan encoder_plan(const CssCode& code);

// |0...0> -> |0_L> on the "data" register.
Circuit build_encoder(const CssCode& code);

// Emit the encoder into an existing circuit at the block offset.
void emit_encoder(Circuit& c, const CssCode& code, uint32_t block,
                  NoiseRole role);

// H on the first ancilla followed by the CNOT chain over w + v qubits.
Circuit build_cat_prep(size_t w, size_t v);

// One verified cat-state extraction of a single stabilizer. Registers:
// data(n), cat(w+v); clbits: ver(v), m(w), syn(1). The v tail ancillas are
// decoupled against ancilla 0 and measured before any data interaction; any
// single preparation fault either trips a check or touches at most one data
// qubit. Core ancillas are read in the conjugate basis; the syndrome bit is
// the parity of the core outcomes.
Circuit build_shor_extraction(const CssCode& code, size_t stab_index,
                              StabType type, size_t v);

// Bare-ancilla extraction of one stabilizer (not fault tolerant).
// Registers: data(n), anc(1); clbits: syn(1).
Circuit build_standard_extraction(const CssCode& code, size_t stab_index,
                                  StabType type);

// Encoded ancilla preparation with verification by transversal comparison
// against a fresh encoded copy. Registers: block(n), copy(n);
// clbits: vm(n) raw copy readout, chk(rows+1) derived checks (stabilizer
// syndrome of the dangerous error type plus the logical parity bit).
Circuit build_steane_ancilla_prep(const CssCode& code, AncillaBasis basis);

// Verification sub-circuit only: encodes a fresh comparison copy, runs the
// transversal comparison against the existing block, reads the copy out and
// derives the check bits. Emits resets for the copy when with_resets.
void emit_steane_verify(Circuit& c, const CssCode& code, AncillaBasis basis,
                        uint32_t block, uint32_t copy, uint32_t vm_base,
                        uint32_t chk_base, bool with_resets);

// Block encoding plus verification (emit form of build_steane_ancilla_prep).
void emit_steane_prep(Circuit& c, const CssCode& code, AncillaBasis basis,
                      uint32_t block, uint32_t copy, uint32_t vm_base,
                      uint32_t chk_base, bool with_resets);

// Transversal syndrome extraction between two blocks already present in c.
// Z syndrome expects the ancilla in |+_L>; X syndrome expects |0_L>.
// Appends: couplings, ancilla readout into m_base..m_base+n-1, and parity
// instructions writing the syndrome into syn_base...
void emit_steane_extraction(Circuit& c, const CssCode& code, uint32_t data,
                            uint32_t anc, StabType type, uint32_t m_base,
                            uint32_t syn_base);

// Derived verification checks for a steane ancilla prep readout.
struct PrepChecks {
  BitVec syndrome;  // stabilizer checks over the raw copy readout
  bool logical_parity = false;
  bool accepted() const { return !syndrome.any() && !logical_parity; }
};
PrepChecks steane_prep_checks(const CssCode& code, AncillaBasis basis,
                              const std::vector<uint8_t>& raw_bits);

// Full multi-round cycle as one flat circuit: per-round ancilla preparation,
// extraction of every stabilizer, readout per policy, decode and feed-forward
// recovery. Used for stats, rendering and the text format; the Monte-Carlo
// runner executes the same segments procedurally (with retry policies).
Circuit schedule_cycle(const CssCode& code, const SchedulerConfig& config);

}  // namespace hft
