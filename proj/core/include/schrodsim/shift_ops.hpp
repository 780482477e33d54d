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

// Shift operators and finite-difference Laplacians, their diagonalization by
// the QFT and a phase ladder, the phase-kickback diagonal unitary and the
// Schrodingerized evolution of the periodic finite-difference heat equation.

#include <vector>

#include "schrodsim/circuit.hpp"
#include "schrodsim/schrod_engine.hpp"

namespace schrodsim {

enum class ShiftVariant { cyclic, dirichlet_truncated };
enum class ShiftDirection { plus, minus };
enum class BoundaryCondition { dirichlet, neumann, periodic };

/// plus maps |j> to |j+1>, minus to |j-1>. The cyclic variant wraps mod M;
/// the truncated variant drops the boundary term and is nilpotent.
/// M must be a power of two.
Matrix build_shift(int M, ShiftVariant variant, ShiftDirection direction);

/// (S^- + S^+ - 2I)/h^2 with ghost values from the boundary condition:
/// zero (dirichlet), mirrored (neumann) or wrapped (periodic).
RealMatrix build_fd_laplacian(int M, double h, BoundaryCondition bc);

/// -(4/h^2) sin^2(pi k / M), k = 0..M-1.
RealVector periodic_laplacian_eigenvalues(int M, double h);

struct PhaseLadder {
  Circuit circuit;
  /// diag(exp(+-2 pi i k / M)).
  Vector diagonal;
};

/// P(sign theta_s) on qubit s, theta_s = (2 pi / M) 2^{n_x - 1 - s}.
PhaseLadder phase_ladder(int n_x, int sign);

/// max over plus/minus of |F^dag U_{P,+-} F - S_cyclic^{+-}|_max.
double verify_shift_diagonalization(int n_x);

/// QFT, phase ladder, inverse QFT: realizes the cyclic shift as a circuit.
Circuit shift_circuit(int n_x, int sign);

/// Applies exp(-2 pi i q_x / M) to |x> on an n-qubit register by adding
/// q_x into an n-qubit ancilla held in the Fourier state of |1>.
class KickbackCircuit {
 public:
  KickbackCircuit(int n, std::vector<long> q_table);

  int n() const { return n_; }
  /// Gate counts of the two ancilla QFTs; the modular-addition map counts as
  /// one oracle call.
  GateCounts qft_counts() const;
  std::size_t oracle_calls() const { return 1; }

  /// Runs ancilla preparation, QFT, |x,y> -> |x, y + q_x mod M>, inverse QFT
  /// on the joint 2n-qubit register and returns the x register. Throws
  /// NumericalError if the ancilla does not return to |1>.
  QuantumState apply(const QuantumState& x_state) const;

  /// Reference: diag(exp(-2 pi i q_x / M)).
  Vector diagonal() const;

 private:
  int n_;
  std::vector<long> q_;
  Circuit prepare_;
  Circuit unprepare_;
};

/// Schrodingerized periodic FD heat equation du/dt = D u with D the periodic
/// Laplacian: warp, inverse QFT on the p register, QFT on the x register,
/// phases exp(i d_k mu_l T) with d_k = (4/h^2) sin^2(pi k/M), and back.
/// Returns the state in (physical x, physical p) form with the norm of the
/// warped initial data.
SchrodState fd_heat_schrodingerized_evolve(int n_x, int n_p, double h, const PGrid& grid,
                                           const Vector& psi0, double T);

}  // namespace schrodsim
