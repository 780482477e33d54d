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

#include <cmath>

#include <gtest/gtest.h>

#include "schrodsim/errors.hpp"
#include "schrodsim/fokker_planck.hpp"
#include "schrodsim/instances.hpp"

namespace schrodsim {
namespace {

HermitianSplit scalar_split(double h1) {
  Matrix m(1, 1);
  m << h1;
  return HermitianSplit::from_parts(m, Matrix::Zero(1, 1));
}

Vector scalar(cplx x) {
  Vector v(1);
  v << x;
  return v;
}

TEST(RestorePointwise, TimeZeroIsExact) {
  Rng rng(31);
  const Vector u0 = random_complex_vector(3, rng);
  const PGrid g = PGrid::with_spacing(-2.0, 30.0, 0.125);
  const SchrodState s = warp_initial(u0, g);
  for (double p : {0.125, 0.5, 3.0, 10.0}) {
    EXPECT_LT((restore_pointwise(s, g, 0.0, p) - u0).norm(), 1e-12 * u0.norm());
  }
}

TEST(RestorePointwise, StableScalarMatchesOracle) {
  const PGrid g = PGrid::with_spacing(-4.0, 28.0, 1.0 / 64);
  const SchrodState out = evolve(scalar_split(-1.0), g, warp_initial(scalar(1.0), g), 1.0);
  const Vector u = restore_pointwise(out, g, 0.0, 0.5);
  EXPECT_LT(std::abs(u(0) - std::exp(-1.0)), 5.0 * g.dp() * std::exp(-1.0));
}

TEST(RestorePointwise, BelowThresholdIsRejected) {
  const PGrid g = PGrid::with_spacing(-4.0, 28.0, 1.0 / 16);
  SchrodState s = warp_initial(scalar(1.0), g);
  s.time = 1.0;
  try {
    restore_pointwise(s, g, 0.5, 0.25);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_DOUBLE_EQ(e.threshold(), 0.5);
  }
  EXPECT_THROW(restore_pointwise(s, g, 0.5, 0.5), PreconditionError);
  EXPECT_NO_THROW(restore_pointwise(s, g, 0.5, 0.5 + g.dp()));
  EXPECT_THROW(restore_pointwise(s, g, 0.5, 1.0 + g.dp() / 3), ParameterError);
}

TEST(RestorePointwise, InvalidRegionHasOrderOneError) {
  // e^{p} e^{-|p - 0.5|} at p = 0.25 is e^{0} against the true e^{0.5}.
  const HermitianSplit s = scalar_split(0.5);
  const Vector ref = reference_evolve(s.A, scalar(1.0), 1.0);
  for (int k = 4; k <= 7; ++k) {
    const PGrid g = PGrid::with_spacing(-2.0, 30.0, std::ldexp(1.0, -k));
    const SchrodState out = evolve(s, g, warp_initial(scalar(1.0), g), 1.0);
    const Vector bad = restore_at(out, g, g.nearest_index(0.25));
    EXPECT_NEAR(std::abs(bad(0)), 1.0, 0.1);
    EXPECT_GT(std::abs(bad(0) - ref(0)), 0.5);
    const Vector good = restore_pointwise(out, g, 0.5, default_p_star(g, 0.5, 1.0));
    EXPECT_LT(std::abs(good(0) - ref(0)), 5.0 * g.dp() * std::abs(ref(0)));
  }
}

TEST(RestorePointwise, StableIndependentOfPStar) {
  Rng rng(32);
  const HermitianSplit s = random_stable_split(3, rng);
  const Vector u0 = random_complex_vector(3, rng);
  const SpectralData e = spectral_data(s);
  double prev = 1e9;
  for (int k = 5; k <= 7; ++k) {
    const PDomain d = choose_domain(e.lambda_min, 0.0, 1.0);
    const PGrid g = PGrid::with_spacing(d.L, d.R, std::ldexp(1.0, -k));
    const SchrodState out = evolve(s, g, warp_initial(u0, g), 1.0);
    double spread = 0.0;
    const Vector first = restore_pointwise(out, g, 0.0, g.dp());
    for (int i = g.nearest_index(g.dp()); g.point(i) <= 4.0; ++i) {
      spread = std::max(spread, (restore_at(out, g, i) - first).norm());
    }
    EXPECT_LT(spread, 10.0 * g.dp() * u0.norm());
    EXPECT_LT(spread, prev);
    prev = spread;
  }
}

TEST(RestoreWindow, SingleWindowIsPointwise) {
  Rng rng(33);
  const HermitianSplit s = random_stable_split(2, rng);
  const Vector u0 = random_complex_vector(2, rng);
  const PGrid g = PGrid::with_spacing(-4.0, 28.0, 1.0 / 32);
  const SchrodState out = evolve(s, g, warp_initial(u0, g), 1.0);
  const double p = default_p_star(g, 0.0, 1.0);
  EXPECT_EQ((restore_window(out, g, 0.0, p, 1) - restore_pointwise(out, g, 0.0, p)).norm(), 0.0);
  const Vector ref = reference_evolve(s.A, u0, 1.0);
  EXPECT_LT((restore_window(out, g, 0.0, p, 8) - ref).norm(), 5.0 * g.dp() * ref.norm());
  EXPECT_THROW(restore_window(out, g, 0.0, p, 0), ParameterError);
}

TEST(DefaultPStar, SmallestGridPointPastMargin) {
  const PGrid g = PGrid::with_spacing(-4.0, 28.0, 0.125);
  EXPECT_DOUBLE_EQ(default_p_star(g, 0.0, 1.0), 0.625);
  EXPECT_DOUBLE_EQ(default_p_star(g, 0.5, 1.0), 1.125);
  EXPECT_DOUBLE_EQ(default_p_star(g, 0.3, 1.0), 1.0);
  EXPECT_THROW(default_p_star(g, 40.0, 1.0), ParameterError);
}

TEST(ProjectionProbability, SymmetricInitialData) {
  const PGrid g = PGrid::with_spacing(-32.0, 32.0, 1.0 / 64);
  const SchrodState s = warp_initial(scalar(1.0), g);
  EXPECT_NEAR(projection_probability(s, g, 0.0), 0.5, 5.0 * g.dp());
}

TEST(ProjectionProbability, PurePhaseDynamicsKeepsHalf) {
  Rng rng(34);
  const HermitianSplit s = HermitianSplit::from_parts(Matrix::Zero(3, 3), random_hermitian(3, rng));
  const PGrid g = PGrid::with_spacing(-32.0, 32.0, 1.0 / 32);
  const SchrodState out = evolve(s, g, warp_initial(random_complex_vector(3, rng), g), 2.0);
  EXPECT_NEAR(projection_probability(out, g, 0.0), 0.5, 5.0 * g.dp());
}

TEST(ProjectionProbability, ScalarDecayMatchesLemma) {
  const double expect = 0.5 * std::exp(-2.0);
  EXPECT_NEAR(expect, 0.06766764161830635, 1e-16);
  double prev = 1.0;
  for (int k = 4; k <= 8; ++k) {
    const PGrid g = PGrid::with_spacing(-4.0, 28.0, std::ldexp(1.0, -k));
    const SchrodState out = evolve(scalar_split(-1.0), g, warp_initial(scalar(1.0), g), 1.0);
    const double err = std::abs(projection_probability(out, g, 0.0) - expect);
    EXPECT_LT(err, 5.0 * g.dp());
    EXPECT_LT(err, prev);
    prev = err;
  }
}

TEST(ProjectionProbability, Errors) {
  const PGrid g(-4.0, 4.0, 16);
  SchrodState zero;
  zero.data = Matrix::Zero(2, 16);
  EXPECT_THROW(projection_probability(zero, g, 0.0), DegenerateStateError);
  EXPECT_THROW(projection_probability(warp_initial(scalar(1.0), g), g, 9.0), ParameterError);
}

TEST(ComplexityFactors, Examples) {
  Rng rng(35);
  const Vector u0 = random_complex_vector(3, rng);
  EXPECT_DOUBLE_EQ(complexity_factors(u0, u0, 0.0, 0.0, 1.0).g0, 2.0);
  const ComplexityFactors decay = complexity_factors(u0, std::exp(-1.0) * u0, 0.0, 0.0, 1.0);
  EXPECT_NEAR(decay.g0, 14.7781121978613, 1e-12);
  const ComplexityFactors f = complexity_factors(u0, 1.7 * u0, 0.5, 0.5, 1.0);
  EXPECT_EQ(f.g_c - f.g_plus, 0.0);
  EXPECT_THROW(complexity_factors(u0, Vector::Zero(3), 0.0, 0.0, 1.0), DivisionError);
}

TEST(ObservableQuadrature, Examples) {
  Rng rng(36);
  const Vector f = random_complex_vector(10, rng);
  const RealVector w = RealVector::Constant(10, 0.3);
  EXPECT_NEAR(observable_quadrature(f, RealVector::Zero(10), 1.0, w), 0.3 * f.squaredNorm(), 1e-12);

  const int M = 64;
  const XGrid x(1, M);
  EXPECT_NEAR(observable_quadrature(Vector::Ones(M), RealVector::Zero(M), 1.0,
                                    RealVector::Constant(M, 2.0 / M)),
              2.0, 1e-14);

  EXPECT_THROW(observable_quadrature(f, RealVector::Zero(9), 1.0, w), DimensionError);
}

TEST(ObservableQuadrature, SteadyStateAgainstRefinedGrid) {
  // Integral of e^{-2 cos(pi x)} over (-1, 1) is 2 I0(2); the periodic
  // trapezoid rule converges spectrally, so a 4096-point sum is exact.
  const int M = 64;
  const FokkerPlanckProblem prob = make_problem(XGrid(1, M), 1.0, Potential::cosine());
  const RealVector fs = steady_state(prob.V, 1.0);
  const Vector f_tilde = transform_to_heat(fs.cast<cplx>(), prob.V, 1.0);
  const double got =
      observable_quadrature(f_tilde, prob.V, 1.0, RealVector::Constant(M, prob.grid.h()));
  const int fine = 4096;
  double ref = 0.0;
  for (int j = 0; j < fine; ++j) ref += std::exp(-2.0 * std::cos(kPi * (-1.0 + 2.0 * j / fine)));
  ref *= 2.0 / fine;
  EXPECT_NEAR(ref, 4.559170604672134, 1e-12);  // 2 I0(2)
  EXPECT_NEAR(got, ref, 1e-8);
}

TEST(Recover, ReportFields) {
  Rng rng(37);
  const HermitianSplit s = random_stable_split(3, rng);
  const Vector u0 = random_complex_vector(3, rng);
  const PGrid g = PGrid::with_spacing(-4.0, 28.0, 1.0 / 32);
  const SchrodState out = evolve(s, g, warp_initial(u0, g), 1.0);
  const RecoveryReport r = recover(out, g, u0, 0.0, 0.0);
  EXPECT_GE(r.probability, 0.0);
  EXPECT_LE(r.probability, 1.0);
  EXPECT_GE(r.g0, 2.0);
  EXPECT_EQ(r.g_c, r.g_plus);
  EXPECT_DOUBLE_EQ(r.p_star, default_p_star(g, 0.0, 1.0));
}

}  // namespace
}  // namespace schrodsim
