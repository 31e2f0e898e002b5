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

#include "hft/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hft {

namespace {
const char* kRoleNames[] = {"generic", "prep",     "coupling", "readout",
                            "background", "recovery", "idle"};
const char* gate_name(GateKind g) {
  switch (g) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::CX: return "CX";
  }
  return "?";
}
}  // namespace

const char* noise_role_name(NoiseRole r) { return kRoleNames[int(r)]; }

NoiseRole noise_role_from_name(const std::string& s) {
  for (int i = 0; i < 7; i++)
    if (s == kRoleNames[i]) return NoiseRole(i);
  throw std::invalid_argument("unknown noise role: " + s);
}

Register Circuit::add_qreg(const std::string& name, uint32_t count) {
  Register r{n_qubits, count};
  qregs[name] = r;
  n_qubits += count;
  return r;
}

Register Circuit::add_creg(const std::string& name, uint32_t count) {
  Register r{n_clbits, count};
  cregs[name] = r;
  n_clbits += count;
  return r;
}

void Circuit::gate1(GateKind g, uint32_t q, NoiseRole role) {
  Instruction i;
  i.kind = InstrKind::gate;
  i.gate = g;
  i.q0 = i.q1 = q;
  i.role = role;
  instructions.push_back(std::move(i));
}

void Circuit::cx(uint32_t c, uint32_t t, NoiseRole role) {
  Instruction i;
  i.kind = InstrKind::gate;
  i.gate = GateKind::CX;
  i.q0 = c;
  i.q1 = t;
  i.role = role;
  instructions.push_back(std::move(i));
}

void Circuit::cz(uint32_t a, uint32_t b, NoiseRole role) {
  gate1(GateKind::H, b, role);
  cx(a, b, role);
  gate1(GateKind::H, b, role);
}

void Circuit::measure(uint32_t q, uint32_t cbit, NoiseRole role) {
  Instruction i;
  i.kind = InstrKind::measure;
  i.q0 = i.q1 = q;
  i.cbit = int32_t(cbit);
  i.role = role;
  instructions.push_back(std::move(i));
}

void Circuit::reset(uint32_t q) {
  Instruction i;
  i.kind = InstrKind::reset;
  i.q0 = i.q1 = q;
  instructions.push_back(std::move(i));
}

void Circuit::cpauli(PauliKind p, uint32_t q, uint32_t cond_bit) {
  Instruction i;
  i.kind = InstrKind::cpauli;
  i.pauli = p;
  i.q0 = i.q1 = q;
  i.cbit = int32_t(cond_bit);
  i.role = NoiseRole::recovery;
  instructions.push_back(std::move(i));
}

void Circuit::parity(uint32_t out, const std::vector<uint32_t>& ins) {
  Instruction i;
  i.kind = InstrKind::parity;
  i.out_base = int32_t(out);
  i.in_bits = ins;
  instructions.push_back(std::move(i));
}

void Circuit::tick() {
  Instruction i;
  i.kind = InstrKind::tick;
  instructions.push_back(std::move(i));
}

void Circuit::append(const Circuit& other) {
  instructions.insert(instructions.end(), other.instructions.begin(),
                      other.instructions.end());
}

bool Circuit::has_noise_sites() const {
  for (const auto& i : instructions) {
    if (i.kind == InstrKind::noise1 || i.kind == InstrKind::noise2 ||
        i.kind == InstrKind::noise_m || i.kind == InstrKind::idle)
      return true;
  }
  return false;
}

void Circuit::validate() const {
  for (const auto& i : instructions) {
    auto chk_q = [&](uint32_t q) {
      if (q >= n_qubits) throw std::invalid_argument("qubit index out of range");
    };
    auto chk_c = [&](int32_t c) {
      if (c < 0 || uint32_t(c) >= n_clbits)
        throw std::invalid_argument("clbit index out of range");
    };
    switch (i.kind) {
      case InstrKind::gate:
        chk_q(i.q0);
        if (i.gate == GateKind::CX) {
          chk_q(i.q1);
          if (i.q0 == i.q1)
            throw std::invalid_argument("CX needs distinct targets");
        }
        break;
      case InstrKind::measure: chk_q(i.q0); chk_c(i.cbit); break;
      case InstrKind::reset:
      case InstrKind::noise1:
      case InstrKind::noise_m:
      case InstrKind::idle: chk_q(i.q0); break;
      case InstrKind::noise2: chk_q(i.q0); chk_q(i.q1); break;
      case InstrKind::cpauli: chk_q(i.q0); chk_c(i.cbit); break;
      case InstrKind::parity:
        chk_c(i.out_base);
        for (uint32_t b : i.in_bits) chk_c(int32_t(b));
        break;
      case InstrKind::decode:
        chk_c(i.out_base);
        for (uint32_t b : i.in_bits) chk_c(int32_t(b));
        for (uint32_t b : i.valid_bits) chk_c(int32_t(b));
        break;
      case InstrKind::tick: break;
    }
  }
}

CircuitStats Circuit::stats() const {
  CircuitStats st;
  st.width = n_qubits;
  std::vector<size_t> tick(n_qubits, 0);
  for (const auto& i : instructions) {
    switch (i.kind) {
      case InstrKind::gate: {
        st.gate_counts[gate_name(i.gate)]++;
        if (i.gate == GateKind::CX) {
          size_t t = std::max(tick[i.q0], tick[i.q1]) + 1;
          tick[i.q0] = tick[i.q1] = t;
        } else {
          tick[i.q0]++;
        }
        break;
      }
      case InstrKind::measure:
        st.measurements++;
        tick[i.q0]++;
        break;
      case InstrKind::reset: tick[i.q0]++; break;
      case InstrKind::cpauli:
        st.gate_counts[std::string("CP") + pauli_char(i.pauli)]++;
        tick[i.q0]++;
        break;
      case InstrKind::noise1:
      case InstrKind::noise2:
      case InstrKind::noise_m:
      case InstrKind::idle: st.noise_sites++; break;
      default: break;
    }
  }
  st.depth = tick.empty() ? 0 : *std::max_element(tick.begin(), tick.end());
  return st;
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "QUBITS " << n_qubits << "\n";
  out << "CLBITS " << n_clbits << "\n";
  for (const auto& [name, r] : qregs)
    out << "REGQ " << name << " " << r.start << " " << r.count << "\n";
  for (const auto& [name, r] : cregs)
    out << "REGC " << name << " " << r.start << " " << r.count << "\n";
  for (const auto& i : instructions) {
    switch (i.kind) {
      case InstrKind::gate:
        if (i.gate == GateKind::CX)
          out << "CX " << i.q0 << " " << i.q1;
        else
          out << gate_name(i.gate) << " " << i.q0;
        if (i.role != NoiseRole::generic)
          out << " @" << noise_role_name(i.role);
        break;
      case InstrKind::measure:
        out << "M " << i.q0 << " -> c" << i.cbit;
        if (i.role != NoiseRole::readout)
          out << " @" << noise_role_name(i.role);
        break;
      case InstrKind::reset: out << "R " << i.q0; break;
      case InstrKind::noise1:
        out << "NOISE1 " << i.q0 << " @" << noise_role_name(i.role);
        break;
      case InstrKind::noise2:
        out << "NOISE2 " << i.q0 << " " << i.q1 << " @"
            << noise_role_name(i.role);
        break;
      case InstrKind::noise_m:
        out << "NOISEM " << i.q0 << " @" << noise_role_name(i.role);
        break;
      case InstrKind::idle:
        out << "IDLE " << i.q0 << " " << i.dur_us;
        break;
      case InstrKind::cpauli:
        out << "CPAULI " << pauli_char(i.pauli) << " " << i.q0 << " if c"
            << i.cbit;
        break;
      case InstrKind::parity: {
        out << "PAR c" << i.out_base << " <-";
        for (uint32_t b : i.in_bits) out << " c" << b;
        break;
      }
      case InstrKind::decode: {
        out << (i.stable ? "DECODES" : "DECODE");
        out << " " << (i.scope == 0 ? "full" : i.scope == 1 ? "z" : "x");
        for (uint32_t b : i.in_bits) out << " c" << b;
        out << " -> c" << i.out_base;
        if (!i.valid_bits.empty()) {
          out << " VALID";
          for (uint32_t b : i.valid_bits) out << " c" << b;
        }
        break;
      }
      case InstrKind::tick: out << "TICK"; break;
    }
    out << "\n";
  }
  return out.str();
}

namespace {
uint32_t parse_cbit(const std::string& tok) {
  if (tok.empty() || tok[0] != 'c')
    throw std::invalid_argument("expected classical bit token, got: " + tok);
  return uint32_t(std::stoul(tok.substr(1)));
}
}  // namespace

Circuit Circuit::from_text(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    auto role_of = [&](size_t first_role_tok) {
      for (size_t i = first_role_tok; i < toks.size(); i++)
        if (!toks[i].empty() && toks[i][0] == '@')
          return noise_role_from_name(toks[i].substr(1));
      return NoiseRole::generic;
    };
    if (op == "QUBITS") {
      c.n_qubits = uint32_t(std::stoul(toks.at(0)));
    } else if (op == "CLBITS") {
      c.n_clbits = uint32_t(std::stoul(toks.at(0)));
    } else if (op == "REGQ") {
      c.qregs[toks.at(0)] = {uint32_t(std::stoul(toks.at(1))),
                             uint32_t(std::stoul(toks.at(2)))};
    } else if (op == "REGC") {
      c.cregs[toks.at(0)] = {uint32_t(std::stoul(toks.at(1))),
                             uint32_t(std::stoul(toks.at(2)))};
    } else if (op == "H" || op == "X" || op == "Y" || op == "Z" || op == "S") {
      GateKind g = op == "H"   ? GateKind::H
                   : op == "X" ? GateKind::X
                   : op == "Y" ? GateKind::Y
                   : op == "Z" ? GateKind::Z
                               : GateKind::S;
      c.gate1(g, uint32_t(std::stoul(toks.at(0))), role_of(1));
    } else if (op == "CX") {
      c.cx(uint32_t(std::stoul(toks.at(0))), uint32_t(std::stoul(toks.at(1))),
           role_of(2));
    } else if (op == "M") {
      // M q -> cN
      c.measure(uint32_t(std::stoul(toks.at(0))), parse_cbit(toks.at(2)),
                toks.size() > 3 ? role_of(3) : NoiseRole::readout);
    } else if (op == "R") {
      c.reset(uint32_t(std::stoul(toks.at(0))));
    } else if (op == "NOISE1" || op == "NOISEM") {
      Instruction i;
      i.kind = op == "NOISE1" ? InstrKind::noise1 : InstrKind::noise_m;
      i.q0 = i.q1 = uint32_t(std::stoul(toks.at(0)));
      i.role = role_of(1);
      c.instructions.push_back(i);
    } else if (op == "NOISE2") {
      Instruction i;
      i.kind = InstrKind::noise2;
      i.q0 = uint32_t(std::stoul(toks.at(0)));
      i.q1 = uint32_t(std::stoul(toks.at(1)));
      i.role = role_of(2);
      c.instructions.push_back(i);
    } else if (op == "IDLE") {
      Instruction i;
      i.kind = InstrKind::idle;
      i.q0 = i.q1 = uint32_t(std::stoul(toks.at(0)));
      i.dur_us = std::stod(toks.at(1));
      i.role = NoiseRole::idle;
      c.instructions.push_back(i);
    } else if (op == "CPAULI") {
      // CPAULI P q if cN
      PauliKind p = toks.at(0) == "X"   ? PauliKind::X
                    : toks.at(0) == "Y" ? PauliKind::Y
                                        : PauliKind::Z;
      c.cpauli(p, uint32_t(std::stoul(toks.at(1))), parse_cbit(toks.at(3)));
    } else if (op == "PAR") {
      // PAR cOUT <- cA cB ...
      Instruction i;
      i.kind = InstrKind::parity;
      i.out_base = int32_t(parse_cbit(toks.at(0)));
      for (size_t k = 2; k < toks.size(); k++)
        i.in_bits.push_back(parse_cbit(toks[k]));
      c.instructions.push_back(i);
    } else if (op == "DECODE" || op == "DECODES") {
      Instruction i;
      i.kind = InstrKind::decode;
      i.stable = op == "DECODES";
      i.scope = toks.at(0) == "full" ? 0 : toks.at(0) == "z" ? 1 : 2;
      size_t k = 1;
      for (; k < toks.size() && toks[k] != "->"; k++)
        i.in_bits.push_back(parse_cbit(toks[k]));
      i.out_base = int32_t(parse_cbit(toks.at(k + 1)));
      k += 2;
      if (k < toks.size() && toks[k] == "VALID") {
        for (k++; k < toks.size(); k++)
          i.valid_bits.push_back(parse_cbit(toks[k]));
      }
      c.instructions.push_back(i);
    } else if (op == "TICK") {
      c.tick();
    } else {
      throw std::invalid_argument("unknown instruction: " + op);
    }
  }
  c.validate();
  return c;
}

std::string Circuit::render() const {
  std::vector<std::string> lanes(n_qubits);
  auto pad_to = [&](size_t len) {
    for (auto& l : lanes)
      while (l.size() < len) l += '-';
  };
  auto place = [&](uint32_t q, const std::string& sym) {
    size_t at = lanes[q].size();
    pad_to(at);
    lanes[q] += sym;
  };
  auto place2 = [&](uint32_t a, uint32_t b, const std::string& sa,
                    const std::string& sb) {
    size_t at = std::max(lanes[a].size(), lanes[b].size());
    pad_to(at);
    lanes[a] += sa;
    lanes[b] += sb;
    pad_to(lanes[a].size());
  };
  for (const auto& i : instructions) {
    switch (i.kind) {
      case InstrKind::gate:
        if (i.gate == GateKind::CX)
          place2(i.q0, i.q1, "*", "+");
        else
          place(i.q0, std::string(1, gate_name(i.gate)[0]));
        break;
      case InstrKind::measure: place(i.q0, "M"); break;
      case InstrKind::reset: place(i.q0, "R"); break;
      case InstrKind::cpauli:
        place(i.q0, std::string("c") + pauli_char(i.pauli));
        break;
      case InstrKind::tick: {
        size_t at = 0;
        for (auto& l : lanes) at = std::max(at, l.size());
        pad_to(at);
        for (auto& l : lanes) l += '|';
        break;
      }
      default: break;  // noise sites and classical ops not drawn
    }
  }
  size_t maxlen = 0;
  for (auto& l : lanes) maxlen = std::max(maxlen, l.size());
  pad_to(maxlen);
  std::ostringstream out;
  for (uint32_t q = 0; q < n_qubits; q++) {
    std::string label = "q" + std::to_string(q);
    for (const auto& [name, r] : qregs) {
      if (q >= r.start && q < r.start + r.count)
        label = name + "[" + std::to_string(q - r.start) + "]";
    }
    out << label << std::string(label.size() < 12 ? 12 - label.size() : 1, ' ')
        << lanes[q] << "\n";
  }
  return out.str();
}

}  // namespace hft
