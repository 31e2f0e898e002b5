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
#include <map>
#include <string>
#include <vector>

#include "hft/pauli.hpp"
#include "hft/tableau.hpp"

namespace hft {

// Role a noise site plays; the binding profile scales rates per role.
enum class NoiseRole : uint8_t {
  generic = 0,
  prep,        // ancilla preparation / verification circuitry
  coupling,    // data-ancilla interaction gates
  readout,     // syndrome measurements
  background,  // per-round data background
  recovery,    // feed-forward correction paulis
  idle,
};

const char* noise_role_name(NoiseRole r);
NoiseRole noise_role_from_name(const std::string& s);

enum class InstrKind : uint8_t {
  gate,      // H/X/Y/Z/S q | CX c t
  measure,   // M q -> c
  reset,     // R q
  noise1,    // NOISE1 q
  noise2,    // NOISE2 q0 q1
  noise_m,   // NOISEM q       (flips the next recorded measurement of q)
  idle,      // IDLE q dur_us
  cpauli,    // CPAULI P q if c
  parity,    // PAR c_out <- c_in...
  decode,    // DECODE[S] Z c.. X c.. -> c_base [VALID c..]
  tick,      // TICK            (round boundary)
};

struct Instruction {
  InstrKind kind;
  GateKind gate = GateKind::H;
  PauliKind pauli = PauliKind::I;
  uint32_t q0 = 0, q1 = 0;
  int32_t cbit = -1;          // measure target / cpauli condition
  double dur_us = 0.0;        // idle duration
  NoiseRole role = NoiseRole::generic;
  bool stable = false;        // decode gated on agreement with previous round
  uint8_t scope = 0;          // decode scope: 0 = full, 1 = z only, 2 = x only
  std::vector<uint32_t> in_bits;   // parity inputs / decode syndrome bits
  std::vector<uint32_t> valid_bits;  // decode: bits that must be 0 to trust
  int32_t out_base = -1;      // parity output / decode correction base
};

struct Register {
  uint32_t start = 0;
  uint32_t count = 0;
};

struct CircuitStats {
  size_t width = 0;
  size_t depth = 0;
  std::map<std::string, size_t> gate_counts;
  size_t measurements = 0;
  size_t noise_sites = 0;
};

// Ordered instruction list over flat qubit/classical-bit index spaces, with
// named registers for the block structure. Text form is line based, one
// instruction per line, and round-trips losslessly.
struct Circuit {
  uint32_t n_qubits = 0;
  uint32_t n_clbits = 0;
  std::vector<Instruction> instructions;
  std::map<std::string, Register> qregs;
  std::map<std::string, Register> cregs;

  Register add_qreg(const std::string& name, uint32_t count);
  Register add_creg(const std::string& name, uint32_t count);

  void gate1(GateKind g, uint32_t q, NoiseRole role = NoiseRole::generic);
  void cx(uint32_t c, uint32_t t, NoiseRole role = NoiseRole::generic);
  // CZ built from {H, CX} with the basis changes on qubit b.
  void cz(uint32_t a, uint32_t b, NoiseRole role = NoiseRole::generic);
  void measure(uint32_t q, uint32_t cbit, NoiseRole role = NoiseRole::readout);
  void reset(uint32_t q);
  void cpauli(PauliKind p, uint32_t q, uint32_t cond_bit);
  void parity(uint32_t out, const std::vector<uint32_t>& ins);
  void tick();

  void append(const Circuit& other);  // indices must already be allocated

  bool has_noise_sites() const;
  CircuitStats stats() const;

  std::string to_text() const;
  static Circuit from_text(const std::string& text);

  // Fixed-width ASCII lanes per qubit with round separators.
  std::string render() const;

  void validate() const;  // index range checks
};

}  // namespace hft
