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

// The warped phase transformation v = e^{-p} u (extended evenly to p < 0),
// the p grid, the Schrodingerized Hamiltonian H1 (x) D_mu - H2 (x) I and
// its mode-by-mode unitary evolution.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "schrodsim/linear_core.hpp"

namespace schrodsim {

/// Uniform periodic grid on [L, R) for the auxiliary variable p.
class PGrid {
 public:
  /// Np even and positive, L < 0 < R.
  PGrid(double L, double R, int Np);
  /// Grid on [L, R) with spacing dp; (R - L)/dp must be an even integer.
  static PGrid with_spacing(double L, double R, double dp);

  double L() const { return L_; }
  double R() const { return R_; }
  int Np() const { return Np_; }
  double dp() const { return dp_; }
  double point(int k) const { return L_ + k * dp_; }
  /// mu for ascending storage position j, i.e. l = j - Np/2.
  double mode(int j) const;
  RealVector points() const;
  RealVector modes() const;
  /// Index of the grid point closest to p; throws if p lies outside [L, R).
  int nearest_index(double p) const;
  /// Smallest index whose point is >= p (within 1e-9 dp); Np when none.
  int first_index_at_or_above(double p) const;

 private:
  double L_;
  double R_;
  int Np_;
  double dp_;
};

struct PDomain {
  double L;
  double R;
};

/// Domain large enough that the leftmost characteristic stays inside and the
/// e^{-p} tail at R is below tail_tol. L0 marks where the initial profile is
/// treated as negligible; it defaults to ln(tail_tol), so the e^{p} tail
/// that leaves through L carries no more than tail_tol. L is rounded down to an integer and
/// the width up to a power of two, so any dyadic dp divides it evenly and
/// p = 0 is a grid point.
PDomain choose_domain(double lambda_min, double lambda_plus, double T,
                      std::optional<double> L0 = std::nullopt,
                      double tail_tol = 1e-9);

enum class PRepresentation { physical_p, fourier_p };
enum class SystemBasis { physical, fourier_x };

/// Extended state; column k holds the n-vector at p_k (physical_p) or at
/// mode position k (fourier_p).
struct SchrodState {
  Matrix data;
  PRepresentation representation = PRepresentation::physical_p;
  SystemBasis basis = SystemBasis::physical;
  double time = 0.0;

  Eigen::Index n() const { return data.rows(); }
  int Np() const { return static_cast<int>(data.cols()); }
  double norm() const { return data.norm(); }
};

SchrodState to_fourier_p(SchrodState state);
SchrodState to_physical_p(SchrodState state);

using AlphaFunction = std::function<double(double)>;

/// data(i,k) = exp(-alpha(p_k)|p_k|) u0_i. alpha defaults to 1.
SchrodState warp_initial(const Vector& u0, const PGrid& grid, const AlphaFunction& alpha = {});

/// Dense H1 (x) D_mu - H2 (x) I with row index i*Np + j (j = ascending mode).
/// Throws ResourceError when the matrix would exceed memory_budget bytes.
Matrix assemble_hamiltonian(const HermitianSplit& split, const PGrid& grid,
                            std::size_t memory_budget = std::size_t{1} << 30);

/// Per-mode propagators exp(-i (mu_j H1 - H2) T) for one split, grid and
/// step length. Building is the expensive part; apply() is cheap and may be
/// reused across steps.
class ModePropagator {
 public:
  ModePropagator(const HermitianSplit& split, const PGrid& grid, double T);

  double T() const { return T_; }
  int Np() const { return static_cast<int>(blocks_.size()); }
  const Matrix& block(int j) const { return blocks_[static_cast<std::size_t>(j)]; }

  /// Returns the state advanced by T, in the representation it came in.
  SchrodState apply(const SchrodState& state) const;

 private:
  double T_;
  Eigen::Index n_;
  std::vector<Matrix> blocks_;
};

SchrodState evolve(const HermitianSplit& split, const PGrid& grid, const SchrodState& state,
                   double T);

/// Continuous-p solution Q diag(exp(-|p - lambda_i t|)) Q^dag u0 of the
/// transport system. Only for H2 = 0; the general case is handled by the
/// semi-analytic profiles in splitting.hpp.
Vector transport_oracle(const HermitianSplit& split, const Vector& u0, double t, double p);
Vector transport_oracle(const SpectralData& spectral, const Vector& u0, double t, double p);

}  // namespace schrodsim
