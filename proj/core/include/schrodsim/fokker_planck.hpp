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

// Spectral discretization of df/dt = sigma div(e^{-V/sigma} grad(e^{V/sigma} f))
// on a periodic box: momentum operators, the conservation-form generator A,
// its symmetrized counterpart H, and the heat form
//   dpsi/dt = sigma Lap psi - U psi,  psi = e^{V/(2 sigma)} f.

#include <string>
#include <utility>
#include <vector>

#include "schrodsim/types.hpp"

namespace schrodsim {

enum class FpForm { conservation_I, conservation_II, heat, fd };

/// Tensor grid with M points per axis on [a, b)^d; flat index
/// j_1 M^{d-1} + ... + j_d.
struct XGrid {
  int d = 1;
  int M = 0;
  double a = -1.0;
  double b = 1.0;

  XGrid() = default;
  XGrid(int d, int M, double a = -1.0, double b = 1.0);

  Eigen::Index size() const;
  double h() const { return (b - a) / M; }
  double coordinate(int j) const { return a + j * h(); }
  /// Per-axis grid indices of a flat index.
  std::vector<int> unflatten(Eigen::Index flat) const;
  /// Quadrature weight h^d.
  double cell_volume() const;
};

struct Potential {
  enum class Kind { quadratic, cosine, table };
  Kind kind = Kind::quadratic;
  /// quadratic: strength * |x|^2 / 2; cosine: strength * sum_l cos(frequency pi x_l).
  double strength = 1.0;
  double frequency = 1.0;
  /// Grid values for Kind::table (length M^d).
  RealVector values;

  static Potential quadratic(double strength = 1.0);
  static Potential cosine(double strength = 1.0, double frequency = 1.0);
  static Potential zero() { return quadratic(0.0); }
  static Potential table(RealVector values);
};

struct FokkerPlanckProblem {
  XGrid grid;
  double sigma = 1.0;
  FpForm form = FpForm::conservation_I;
  RealVector V;
  /// Column l holds dV/dx_l. Filled analytically for built-in potentials,
  /// spectrally for tables.
  RealMatrix V_grad;
  RealVector V_lap;
  std::vector<std::string> warnings;
};

/// Samples the potential and its derivatives. Throws ParameterError for
/// sigma <= 0, odd M or d outside {1, 2}.
FokkerPlanckProblem make_problem(const XGrid& grid, double sigma, const Potential& potential,
                                 FpForm form = FpForm::conservation_I);

/// M x M matrix of -i d/dx on [a, b): Phi D_mu Phi^{-1} with
/// Phi_{jm} = exp(2 pi i m j / M), m = -M/2 .. M/2-1. M must be even.
Matrix momentum_operator(int M, double a = -1.0, double b = 1.0);

/// Ascending mode values 2 pi m / (b - a).
RealVector momentum_modes(int M, double a = -1.0, double b = 1.0);

/// One-axis operator acting on axis `axis` of the tensor grid.
Matrix embed_axis(const Matrix& op, const XGrid& grid, int axis);

/// A = -sigma sum_l P_l diag(e^{-V/sigma}) P_l diag(e^{V/sigma}).
Matrix assemble_conservation_A(const FokkerPlanckProblem& prob);

/// H = -sigma e^{V/(2 sigma)} (sum_l P_l e^{-V/sigma} P_l) e^{V/(2 sigma)}.
Matrix assemble_symmetric_H(const FokkerPlanckProblem& prob);

/// sum_l P_l^2.
Matrix negative_laplacian(const XGrid& grid);

/// U = |grad V|^2 / (4 sigma) - Lap V / 2.
RealVector heat_form_potential(const FokkerPlanckProblem& prob);

/// -(sigma sum_l P_l^2 + diag(U)).
Matrix heat_generator(const FokkerPlanckProblem& prob);

Vector transform_to_heat(const Vector& f, const RealVector& V, double sigma);
Vector transform_from_heat(const Vector& psi, const RealVector& V, double sigma);

/// e^{-V/sigma}.
RealVector steady_state(const RealVector& V, double sigma);

/// Largest eigenvalue of the Hermitian part of the conservation-form
/// generator, clipped at 0, for each M. Entries run in parallel.
std::vector<std::pair<int, double>> positive_eig_scan(const Potential& potential, double sigma,
                                                      const std::vector<int>& M_list, int d = 1,
                                                      double a = -1.0, double b = 1.0);

}  // namespace schrodsim
