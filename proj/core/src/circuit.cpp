// Copyright 2026 The schrodsim Authors
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

#include "schrodsim/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "schrodsim/errors.hpp"

namespace schrodsim {
namespace {

void check_width(int n) {
  if (n < 1) throw ParameterError("circuit: need at least one qubit");
  if (n > kMaxQubits) {
    throw ResourceError("circuit: " + std::to_string(n) + " qubits exceeds the statevector cap of " +
                        std::to_string(kMaxQubits));
  }
}

std::size_t bit_of(int n, int q) { return std::size_t{1} << (n - 1 - q); }

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::P: return "P";
    case GateKind::CP: return "CP";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

bool two_qubit(GateKind k) { return k == GateKind::CP || k == GateKind::SWAP; }

}  // namespace

QuantumState QuantumState::basis(int n, std::size_t index) {
  check_width(n);
  const std::size_t dim = std::size_t{1} << n;
  if (index >= dim) throw ParameterError("QuantumState::basis: index out of range");
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(dim));
  amp(static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(n, std::move(amp));
}

QuantumState QuantumState::from_amplitudes(int n, const Vector& amplitudes) {
  check_width(n);
  if (amplitudes.size() != (Eigen::Index{1} << n)) {
    throw DimensionError("QuantumState: amplitude count is not 2^n");
  }
  const double nrm = amplitudes.norm();
  if (!(nrm > 0.0)) throw DegenerateStateError("QuantumState: zero amplitude vector");
  return QuantumState(n, amplitudes / nrm);
}

double QuantumState::fidelity(const QuantumState& other) const {
  if (other.n_ != n_) throw DimensionError("fidelity: qubit counts differ");
  return std::norm(amp_.dot(other.amp_));
}

void apply_gate(const Gate& g, QuantumState& state) {
  const int n = state.n_qubits();
  if (g.target < 0 || g.target >= n) throw ParameterError("gate target out of range");
  if (two_qubit(g.kind) && (g.control < 0 || g.control >= n || g.control == g.target)) {
    throw ParameterError("gate control out of range");
  }
  Vector& a = state.mutable_amplitudes();
  const std::size_t dim = state.dim();
  const std::size_t t = bit_of(n, g.target);
  switch (g.kind) {
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & t) continue;
        const cplx x = a(static_cast<Eigen::Index>(i));
        const cplx y = a(static_cast<Eigen::Index>(i | t));
        a(static_cast<Eigen::Index>(i)) = r * (x + y);
        a(static_cast<Eigen::Index>(i | t)) = r * (x - y);
      }
      break;
    }
    case GateKind::X:
      for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & t)) std::swap(a(static_cast<Eigen::Index>(i)), a(static_cast<Eigen::Index>(i | t)));
      }
      break;
    case GateKind::P: {
      const cplx phase = std::polar(1.0, g.angle);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & t) a(static_cast<Eigen::Index>(i)) *= phase;
      }
      break;
    }
    case GateKind::CP: {
      const cplx phase = std::polar(1.0, g.angle);
      const std::size_t both = t | bit_of(n, g.control);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & both) == both) a(static_cast<Eigen::Index>(i)) *= phase;
      }
      break;
    }
    case GateKind::SWAP: {
      const std::size_t c = bit_of(n, g.control);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & t) && !(i & c)) {
          std::swap(a(static_cast<Eigen::Index>(i)), a(static_cast<Eigen::Index>((i ^ t) | c)));
        }
      }
      break;
    }
  }
}

Circuit::Circuit(int n_qubits) : n_(n_qubits) { check_width(n_qubits); }

Circuit& Circuit::add(const Gate& g) {
  if (g.target < 0 || g.target >= n_) throw ParameterError("Circuit::add: target out of range");
  if (two_qubit(g.kind) && (g.control < 0 || g.control >= n_ || g.control == g.target)) {
    throw ParameterError("Circuit::add: control out of range");
  }
  if (!std::isfinite(g.angle)) throw ParameterError("Circuit::add: non-finite angle");
  gates_.push_back(g);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_ != n_) throw DimensionError("Circuit::append: widths differ");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(n_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    g.angle = -g.angle;
    inv.gates_.push_back(g);
  }
  return inv;
}

void Circuit::apply(QuantumState& state) const {
  if (state.n_qubits() != n_) throw DimensionError("Circuit::apply: state width differs");
  for (const Gate& g : gates_) apply_gate(g, state);
}

Matrix Circuit::to_matrix() const {
  const std::size_t dim = std::size_t{1} << n_;
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    QuantumState s = QuantumState::basis(n_, j);
    apply(s);
    m.col(static_cast<Eigen::Index>(j)) = s.amplitudes();
  }
  return m;
}

GateCounts Circuit::counts() const {
  GateCounts c;
  for (const Gate& g : gates_) (two_qubit(g.kind) ? c.two_qubit : c.single)++;
  return c;
}

std::string Circuit::serialize() const {
  std::string out = "# qubits " + std::to_string(n_) + "\n";
  char buf[64];
  for (const Gate& g : gates_) {
    out += gate_name(g.kind);
    out += ' ';
    out += std::to_string(g.target);
    if (two_qubit(g.kind)) {
      out += ' ';
      out += std::to_string(g.control);
    }
    if (g.kind == GateKind::P || g.kind == GateKind::CP) {
      std::snprintf(buf, sizeof buf, " %.17g", g.angle);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Circuit Circuit::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int width = -1;
  std::vector<Gate> gates;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head[0] == '#') {
      std::string key;
      int value = 0;
      if (ls >> key >> value && key == "qubits") width = value;
      continue;
    }
    Gate g;
    if (head == "H") g.kind = GateKind::H;
    else if (head == "X") g.kind = GateKind::X;
    else if (head == "P") g.kind = GateKind::P;
    else if (head == "CP") g.kind = GateKind::CP;
    else if (head == "SWAP") g.kind = GateKind::SWAP;
    else throw ParameterError("Circuit::parse: unknown gate '" + head + "' on line " + std::to_string(line_no));
    bool ok = static_cast<bool>(ls >> g.target);
    if (ok && two_qubit(g.kind)) ok = static_cast<bool>(ls >> g.control);
    if (ok && (g.kind == GateKind::P || g.kind == GateKind::CP)) ok = static_cast<bool>(ls >> g.angle);
    std::string extra;
    if (!ok || (ls >> extra)) {
      throw ParameterError("Circuit::parse: malformed line " + std::to_string(line_no));
    }
    gates.push_back(g);
  }
  if (width < 0) {
    width = 0;
    for (const Gate& g : gates) width = std::max({width, g.target + 1, g.control + 1});
  }
  Circuit c(width);
  for (const Gate& g : gates) c.add(g);
  return c;
}

Circuit qft_circuit(int n_qubits, int first, int count) {
  if (first < 0 || count < 1 || first + count > n_qubits) {
    throw ParameterError("qft_circuit: qubit range outside register");
  }
  Circuit c(n_qubits);
  for (int i = 0; i < count; ++i) {
    c.h(first + i);
    for (int j = i + 1; j < count; ++j) {
      c.cp(first + i, first + j, 2.0 * kPi / std::ldexp(1.0, j - i + 1));
    }
  }
  for (int i = 0; i < count / 2; ++i) c.swap(first + i, first + count - 1 - i);
  return c;
}

Matrix dft_matrix(int M) {
  if (M < 1) throw ParameterError("dft_matrix: M must be positive");
  Matrix f(M, M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (int k = 0; k < M; ++k) {
    for (int j = 0; j < M; ++j) {
      f(k, j) = std::polar(scale, 2.0 * kPi * static_cast<double>((static_cast<long>(j) * k) % M) / M);
    }
  }
  return f;
}

}  // namespace schrodsim
