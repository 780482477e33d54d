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

#include "schrodsim/shift_ops.hpp"

#include <cmath>
#include <string>

#include "schrodsim/errors.hpp"

namespace schrodsim {
namespace {

bool is_power_of_two(long m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

Matrix build_shift(int M, ShiftVariant variant, ShiftDirection direction) {
  if (!is_power_of_two(M)) {
    throw ParameterError("build_shift: M = " + std::to_string(M) + " is not a power of two");
  }
  Matrix s = Matrix::Zero(M, M);
  const int step = direction == ShiftDirection::plus ? 1 : -1;
  for (int j = 0; j < M; ++j) {
    const int to = j + step;
    if (to >= 0 && to < M) {
      s(to, j) = 1.0;
    } else if (variant == ShiftVariant::cyclic) {
      s((to + M) % M, j) = 1.0;
    }
  }
  return s;
}

RealMatrix build_fd_laplacian(int M, double h, BoundaryCondition bc) {
  if (M < 1) throw ParameterError("build_fd_laplacian: M must be positive");
  if (!(h > 0.0)) throw ParameterError("build_fd_laplacian: h must be positive");
  RealMatrix d = RealMatrix::Zero(M, M);
  for (int j = 0; j < M; ++j) {
    d(j, j) -= 2.0;
    for (int nb : {j - 1, j + 1}) {
      if (nb >= 0 && nb < M) {
        d(j, nb) += 1.0;
      } else if (bc == BoundaryCondition::neumann) {
        d(j, j) += 1.0;
      } else if (bc == BoundaryCondition::periodic) {
        d(j, (nb + M) % M) += 1.0;
      }
    }
  }
  return d / (h * h);
}

RealVector periodic_laplacian_eigenvalues(int M, double h) {
  if (M < 1) throw ParameterError("periodic_laplacian_eigenvalues: M must be positive");
  if (!(h > 0.0)) throw ParameterError("periodic_laplacian_eigenvalues: h must be positive");
  RealVector ev(M);
  for (int k = 0; k < M; ++k) {
    const double s = std::sin(kPi * k / M);
    ev(k) = -4.0 / (h * h) * s * s;
  }
  return ev;
}

PhaseLadder phase_ladder(int n_x, int sign) {
  if (sign != 1 && sign != -1) throw ParameterError("phase_ladder: sign must be +1 or -1");
  PhaseLadder out{Circuit(n_x), Vector()};
  const long M = 1L << n_x;
  for (int s = 0; s < n_x; ++s) {
    out.circuit.p(s, sign * 2.0 * kPi / static_cast<double>(M) * std::ldexp(1.0, n_x - 1 - s));
  }
  out.diagonal.resize(M);
  for (long k = 0; k < M; ++k) {
    out.diagonal(k) = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(M));
  }
  return out;
}

Circuit shift_circuit(int n_x, int sign) {
  const Circuit f = qft_circuit(n_x);
  Circuit c(n_x);
  c.append(f).append(phase_ladder(n_x, sign).circuit).append(f.inverse());
  return c;
}

double verify_shift_diagonalization(int n_x) {
  if (n_x < 1 || n_x > 10) throw ParameterError("verify_shift_diagonalization: n_x must be in [1, 10]");
  const int M = 1 << n_x;
  const Matrix f = qft_circuit(n_x).to_matrix();
  double worst = 0.0;
  for (int sign : {1, -1}) {
    const Matrix u = phase_ladder(n_x, sign).circuit.to_matrix();
    const Matrix s = build_shift(M, ShiftVariant::cyclic,
                                 sign > 0 ? ShiftDirection::plus : ShiftDirection::minus);
    worst = std::max(worst, max_abs(f.adjoint() * u * f - s));
  }
  return worst;
}

KickbackCircuit::KickbackCircuit(int n, std::vector<long> q_table)
    : n_(n), q_(std::move(q_table)), prepare_(2 * n), unprepare_(2 * n) {
  if (n < 1 || 2 * n > kMaxQubits) {
    throw ResourceError("KickbackCircuit: 2n = " + std::to_string(2 * n) +
                        " qubits exceeds the statevector cap");
  }
  const long M = 1L << n;
  if (static_cast<long>(q_.size()) != M) throw DimensionError("KickbackCircuit: q_table length is not 2^n");
  for (long q : q_) {
    if (q < 0 || q > M - 1) {
      throw ParameterError("KickbackCircuit: q_x = " + std::to_string(q) + " outside [0, M-1]");
    }
  }
  const Circuit f = qft_circuit(2 * n, n, n);
  prepare_.x(2 * n - 1).append(f);
  unprepare_.append(f.inverse()).x(2 * n - 1);
}

GateCounts KickbackCircuit::qft_counts() const {
  const GateCounts a = qft_circuit(2 * n_, n_, n_).counts();
  return {2 * a.single, 2 * a.two_qubit};
}

QuantumState KickbackCircuit::apply(const QuantumState& x_state) const {
  if (x_state.n_qubits() != n_) throw DimensionError("KickbackCircuit::apply: register width differs");
  const long M = 1L << n_;
  Vector joint = Vector::Zero(M * M);
  for (long x = 0; x < M; ++x) joint(x * M) = x_state.amplitudes()(x);
  QuantumState s = QuantumState::from_amplitudes(2 * n_, joint);
  prepare_.apply(s);

  // |x, y> -> |x, y + q_x mod M>, applied as a basis relabeling.
  const Vector before = s.amplitudes();
  Vector& after = s.mutable_amplitudes();
  for (long x = 0; x < M; ++x) {
    const long q = q_[static_cast<std::size_t>(x)];
    for (long y = 0; y < M; ++y) after(x * M + (y + q) % M) = before(x * M + y);
  }

  unprepare_.apply(s);
  Vector out(M);
  double leaked = 0.0;
  for (long x = 0; x < M; ++x) {
    out(x) = s.amplitudes()(x * M);
    leaked += s.amplitudes().segment(x * M + 1, M - 1).squaredNorm();
  }
  if (leaked > 1e-20) {
    throw NumericalError("KickbackCircuit: ancilla did not return to its initial state",
                         std::sqrt(leaked));
  }
  return QuantumState::from_amplitudes(n_, out);
}

Vector KickbackCircuit::diagonal() const {
  const long M = 1L << n_;
  Vector d(M);
  for (long x = 0; x < M; ++x) {
    d(x) = std::polar(1.0, -2.0 * kPi * static_cast<double>(q_[static_cast<std::size_t>(x)]) /
                               static_cast<double>(M));
  }
  return d;
}

SchrodState fd_heat_schrodingerized_evolve(int n_x, int n_p, double h, const PGrid& grid,
                                           const Vector& psi0, double T) {
  if (n_x < 1 || n_p < 1) throw ParameterError("fd_heat: register sizes must be positive");
  if (n_x + n_p > kMaxQubits) throw ResourceError("fd_heat: n_x + n_p exceeds the statevector cap");
  const long M = 1L << n_x;
  const long Np = 1L << n_p;
  if (grid.Np() != Np) throw DimensionError("fd_heat: grid.Np() is not 2^n_p");
  if (psi0.size() != M) throw DimensionError("fd_heat: psi0 length is not 2^n_x");
  if (!(h > 0.0)) throw ParameterError("fd_heat: h must be positive");
  const int n = n_x + n_p;

  const SchrodState warped = warp_initial(psi0, grid);
  Vector amp(M * Np);
  for (long x = 0; x < M; ++x) {
    for (long k = 0; k < Np; ++k) amp(x * Np + k) = warped.data(x, k);
  }
  const double scale = amp.norm();
  QuantumState s = QuantumState::from_amplitudes(n, amp);

  const Circuit qft_x = qft_circuit(n, 0, n_x);
  const Circuit qft_p = qft_circuit(n, n_x, n_p);
  qft_p.inverse().apply(s);
  qft_x.apply(s);
  const RealVector d = -periodic_laplacian_eigenvalues(static_cast<int>(M), h);
  Vector& a = s.mutable_amplitudes();
  for (long k = 0; k < M; ++k) {
    for (long l = 0; l < Np; ++l) {
      const long signed_l = l < Np / 2 ? l : l - Np;
      const double mu = 2.0 * kPi * static_cast<double>(signed_l) / (grid.R() - grid.L());
      a(k * Np + l) *= std::polar(1.0, d(k) * mu * T);
    }
  }
  qft_x.inverse().apply(s);
  qft_p.apply(s);

  SchrodState out;
  out.data.resize(M, Np);
  for (long x = 0; x < M; ++x) {
    for (long k = 0; k < Np; ++k) out.data(x, k) = scale * s.amplitudes()(x * Np + k);
  }
  out.time = T;
  return out;
}

}  // namespace schrodsim
