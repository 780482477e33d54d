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

#include "schrodsim/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schrodsim/errors.hpp"

namespace schrodsim {
namespace {

int grid_index_of(const PGrid& grid, double p) {
  const int k = grid.nearest_index(p);
  if (std::abs(grid.point(k) - p) > 1e-9 * grid.dp()) {
    throw ParameterError("restore: p* = " + std::to_string(p) + " is not a grid point");
  }
  return k;
}

void check_threshold(const PGrid& grid, double lambda_plus, double t, double p_star) {
  const double thr = restore_threshold(lambda_plus, t);
  if (p_star < thr + grid.dp() * (1.0 - 1e-9)) {
    throw PreconditionError("restore: p* = " + std::to_string(p_star) +
                                " is below threshold lambda_plus*t = " + std::to_string(thr) +
                                " plus one grid spacing",
                            thr);
  }
}

}  // namespace

double restore_threshold(double lambda_plus, double t) { return std::max(lambda_plus * t, 0.0); }

Vector restore_at(const SchrodState& state, const PGrid& grid, int k) {
  if (state.Np() != grid.Np()) throw DimensionError("restore: state columns do not match grid");
  if (k < 0 || k >= grid.Np()) throw ParameterError("restore: index outside grid");
  if (state.representation == PRepresentation::physical_p) {
    return std::exp(grid.point(k)) * state.data.col(k);
  }
  return std::exp(grid.point(k)) * to_physical_p(state).data.col(k);
}

Vector restore_pointwise(const SchrodState& state, const PGrid& grid, double lambda_plus,
                         double p_star) {
  check_threshold(grid, lambda_plus, state.time, p_star);
  return restore_at(state, grid, grid_index_of(grid, p_star));
}

Vector restore_window(const SchrodState& state, const PGrid& grid, double lambda_plus,
                      double p_star, int window) {
  if (window < 1) throw ParameterError("restore_window: window must be >= 1");
  check_threshold(grid, lambda_plus, state.time, p_star);
  const int k0 = grid_index_of(grid, p_star);
  if (k0 + window > grid.Np()) throw ParameterError("restore_window: window runs past R");
  const SchrodState phys = to_physical_p(state);
  Vector sum = Vector::Zero(state.n());
  for (int k = k0; k < k0 + window; ++k) sum += std::exp(grid.point(k)) * phys.data.col(k);
  return sum / static_cast<double>(window);
}

double default_p_star(const PGrid& grid, double lambda_plus, double t, int margin_steps) {
  const double target = restore_threshold(lambda_plus, t) + margin_steps * grid.dp();
  const int k = grid.first_index_at_or_above(target);
  if (k >= grid.Np()) throw ParameterError("default_p_star: threshold lies beyond R");
  return grid.point(k);
}

double projection_probability(const SchrodState& state, const PGrid& grid, double threshold) {
  if (state.Np() != grid.Np()) throw DimensionError("projection_probability: grid mismatch");
  if (!(threshold >= grid.L() && threshold <= grid.R())) {
    throw ParameterError("projection_probability: threshold outside [L, R]");
  }
  const SchrodState phys = to_physical_p(state);
  const RealVector col_norms = phys.data.colwise().squaredNorm().transpose();
  const double total = col_norms.sum();
  if (!(total > 0.0)) throw DegenerateStateError("projection_probability: zero state");
  const int k0 = grid.first_index_at_or_above(threshold);
  const double above = col_norms.segment(k0, grid.Np() - k0).sum();
  return above / total;
}

double g_factor(const Vector& u0, const Vector& uT, double kappa, double T) {
  const double denom = std::exp(-kappa * T) * uT.norm();
  if (!(denom > 0.0)) throw DivisionError("g_factor: final state has zero norm");
  const double ratio = u0.norm() / denom;
  return 2.0 * ratio * ratio;
}

ComplexityFactors complexity_factors(const Vector& u0, const Vector& uT, double lambda_plus,
                                     double c, double T) {
  if (u0.size() != uT.size()) throw DimensionError("complexity_factors: length mismatch");
  ComplexityFactors f;
  f.g0 = g_factor(u0, uT, 0.0, T);
  f.g_plus = g_factor(u0, uT, lambda_plus, T);
  f.g_c = g_factor(u0, uT, c, T);
  return f;
}

double observable_quadrature(const Vector& f_tilde, const RealVector& V, double sigma,
                             const RealVector& weights) {
  if (f_tilde.size() != V.size() || V.size() != weights.size()) {
    throw DimensionError("observable_quadrature: inputs differ in length");
  }
  if (!(sigma > 0.0)) throw ParameterError("observable_quadrature: sigma must be positive");
  if ((weights.array() < 0.0).any()) throw ParameterError("observable_quadrature: negative weight");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < V.size(); ++j) {
    sum += std::exp(-V(j) / sigma) * weights(j) * std::norm(f_tilde(j));
  }
  return sum;
}

RecoveryReport recover(const SchrodState& state, const PGrid& grid, const Vector& u0,
                       double lambda_plus, double c) {
  RecoveryReport r;
  r.lambda_plus = lambda_plus;
  r.p_star = default_p_star(grid, lambda_plus, state.time);
  r.u_restored = restore_pointwise(state, grid, lambda_plus, r.p_star);
  r.probability = projection_probability(state, grid, restore_threshold(lambda_plus, state.time));
  const ComplexityFactors f =
      complexity_factors(u0, r.u_restored, lambda_plus, c, state.time);
  r.g0 = f.g0;
  r.g_plus = f.g_plus;
  r.g_c = f.g_c;
  return r;
}

}  // namespace schrodsim
