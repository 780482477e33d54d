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

// Reading u(t) back out of the extended state, the probability of landing in
// the valid p region, and the g-factors that multiply the cost of repeated
// preparation.

#include "schrodsim/schrod_engine.hpp"

namespace schrodsim {

struct RecoveryReport {
  Vector u_restored;
  double p_star = 0.0;
  double probability = 0.0;
  double g0 = 0.0;
  double g_plus = 0.0;
  double g_c = 0.0;
  double lambda_plus = 0.0;
};

/// max(lambda_plus t, 0): restoration is valid for p at or above this.
double restore_threshold(double lambda_plus, double t);

/// e^{p_k} v(t, p_k) with no threshold check.
Vector restore_at(const SchrodState& state, const PGrid& grid, int k);

/// e^{p*} v(t, p*). p* must be a grid point at least one spacing above the
/// threshold; otherwise PreconditionError carrying the threshold.
Vector restore_pointwise(const SchrodState& state, const PGrid& grid, double lambda_plus,
                         double p_star);

/// Mean of e^{p_k} v(t, p_k) over `window` consecutive grid points starting
/// at p*. window = 1 is restore_pointwise.
Vector restore_window(const SchrodState& state, const PGrid& grid, double lambda_plus,
                      double p_star, int window);

/// Smallest grid point >= max(lambda_plus t, 0) + margin_steps * dp.
double default_p_star(const PGrid& grid, double lambda_plus, double t, int margin_steps = 5);

/// Share of the squared norm at grid points p_k >= threshold.
double projection_probability(const SchrodState& state, const PGrid& grid, double threshold);

struct ComplexityFactors {
  double g0 = 0.0;
  double g_plus = 0.0;
  double g_c = 0.0;
};

/// 2 (|u0| / |e^{-kappa T} uT|)^2; kappa = 0 gives g0.
double g_factor(const Vector& u0, const Vector& uT, double kappa, double T);

ComplexityFactors complexity_factors(const Vector& u0, const Vector& uT, double lambda_plus,
                                     double c, double T);

/// sum_j exp(-V_j/sigma) w_j |f_tilde_j|^2.
double observable_quadrature(const Vector& f_tilde, const RealVector& V, double sigma,
                             const RealVector& weights);

/// Restores at the default p* and fills every report field; c is the
/// stabilization shift used for g_c.
RecoveryReport recover(const SchrodState& state, const PGrid& grid, const Vector& u0,
                       double lambda_plus, double c);

}  // namespace schrodsim
