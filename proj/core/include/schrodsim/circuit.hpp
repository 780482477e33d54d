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

#pragma once

// Dense statevector emulator. Qubit 0 is the most significant bit of the
// basis index.

#include <cstddef>
#include <string>
#include <vector>

#include "schrodsim/types.hpp"

namespace schrodsim {

inline constexpr int kMaxQubits = 14;

class QuantumState {
 public:
  /// |index> on n qubits.
  static QuantumState basis(int n, std::size_t index);
  /// Normalizes `amplitudes`; throws DegenerateStateError on a zero vector.
  static QuantumState from_amplitudes(int n, const Vector& amplitudes);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }
  Vector& mutable_amplitudes() { return amp_; }
  double norm() const { return amp_.norm(); }
  /// |<this|other>|^2.
  double fidelity(const QuantumState& other) const;

 private:
  QuantumState(int n, Vector amp) : n_(n), amp_(std::move(amp)) {}
  int n_;
  Vector amp_;
};

enum class GateKind { H, X, P, CP, SWAP };

/// P: diag(1, e^{i angle}) on target. CP: phase e^{i angle} when target and
/// control are both 1. SWAP exchanges target and control.
struct Gate {
  GateKind kind = GateKind::H;
  int target = 0;
  int control = -1;
  double angle = 0.0;
};

struct GateCounts {
  std::size_t single = 0;
  std::size_t two_qubit = 0;
  std::size_t total() const { return single + two_qubit; }
};

class Circuit {
 public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  Circuit& add(const Gate& g);
  Circuit& h(int q) { return add({GateKind::H, q, -1, 0.0}); }
  Circuit& x(int q) { return add({GateKind::X, q, -1, 0.0}); }
  Circuit& p(int q, double angle) { return add({GateKind::P, q, -1, angle}); }
  Circuit& cp(int target, int control, double angle) {
    return add({GateKind::CP, target, control, angle});
  }
  Circuit& swap(int a, int b) { return add({GateKind::SWAP, a, b, 0.0}); }
  Circuit& append(const Circuit& other);

  /// Reversed gate order with negated phases.
  Circuit inverse() const;
  void apply(QuantumState& state) const;
  /// Dense 2^n x 2^n unitary, built column by column.
  Matrix to_matrix() const;
  GateCounts counts() const;

  /// One gate per line: `GATE target [control] [angle]`, angles with 17
  /// significant digits. A leading `# qubits n` line records the width.
  std::string serialize() const;
  static Circuit parse(const std::string& text);

 private:
  int n_;
  std::vector<Gate> gates_;
};

void apply_gate(const Gate& g, QuantumState& state);

/// F|j> = M^{-1/2} sum_k exp(2 pi i j k / M)|k> on qubits [first, first + count)
/// of an n-qubit register.
Circuit qft_circuit(int n_qubits, int first, int count);
inline Circuit qft_circuit(int n) { return qft_circuit(n, 0, n); }

/// Dense DFT matrix with the same convention as qft_circuit.
Matrix dft_matrix(int M);

}  // namespace schrodsim
