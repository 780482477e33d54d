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

// Lie time splitting of the Schrodingerized system: transport by -H1 d/dp
// followed by the phase e^{i H2 dt}. Two state representations are
// supported: the Fourier p grid (production path) and a semi-analytic
// profile sum_s e^{-|p - s|} c_s that is exact in continuous p.

#include <vector>

#include "schrodsim/fokker_planck.hpp"
#include "schrodsim/schrod_engine.hpp"

namespace schrodsim {

struct SplitSchedule {
  double dt = 0.0;
  int steps = 0;

  /// Splits [0, T] into equal steps of length close to dt_hint; steps*dt
  /// reproduces T to 1e-12.
  static SplitSchedule for_interval(double T, double dt_hint);
  double T() const { return dt * steps; }
};

/// Heat-form step on a state stored in (fourier_x, fourier_p) form:
/// kinetic phase e^{i sigma |k|^2 mu dt} in Fourier-x, then the potential
/// phase e^{i U mu dt} in physical x. Phases are precomputed once.
class HeatSplitPropagator {
 public:
  HeatSplitPropagator(const XGrid& xgrid, const RealVector& U, double sigma, const PGrid& grid,
                      double dt);
  SchrodState step(SchrodState state) const;
  SchrodState run(SchrodState state, int steps) const;

 private:
  XGrid xgrid_;
  double dt_;
  Matrix kinetic_;
  Matrix potential_;
};

SchrodState heat_split_step(const SchrodState& state, const RealVector& U, double sigma,
                            const XGrid& xgrid, const PGrid& grid, double dt);

/// Warped heat-form initial data psi0 converted to (fourier_x, fourier_p).
SchrodState heat_initial_state(const Vector& psi0, const XGrid& xgrid, const PGrid& grid);

/// Inverse of heat_initial_state's basis change: (physical x, physical p).
SchrodState heat_to_physical(SchrodState state, const XGrid& xgrid);

/// v(p) = sum_t exp(-|p - shift_t|) coeff_t.
class PProfile {
 public:
  struct Term {
    double shift;
    Vector coeff;
  };

  PProfile() = default;
  explicit PProfile(Eigen::Index n) : n_(n) {}
  /// e^{-|p|} u0.
  static PProfile warped(const Vector& u0);

  Eigen::Index n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  void add(double shift, const Vector& coeff);
  /// Sorts by shift, merges shifts equal to rounding and drops zero terms.
  void canonicalize();

  Vector evaluate(double p) const;
  /// Integral of |v|^2 over the whole line.
  double norm_squared() const;
  /// Integral of |v|^2 over [threshold, infinity).
  double norm_squared_above(double threshold) const;
  /// Samples on a p grid as a physical_p state.
  SchrodState sample(const PGrid& grid, double time) const;

 private:
  Eigen::Index n_ = 0;
  std::vector<Term> terms_;
};

/// Exact integrals of exp(-|p-a| - |p-b|).
double pair_integral(double a, double b);
double pair_integral_above(double a, double b, double threshold);

/// One Lie step for the semi-analytic representation, with the eigen-data
/// of H1 and e^{i H2 dt} computed once.
class ProfileSplitter {
 public:
  ProfileSplitter(const HermitianSplit& split, double dt);
  PProfile step(const PProfile& v) const;
  const SpectralData& spectral() const { return spectral_; }

 private:
  SpectralData spectral_;
  Matrix phase_;
  double dt_;
};

PProfile general_split_step(const HermitianSplit& split, const PProfile& v, double dt);

/// One Lie step on the Fourier p grid.
class GridSplitter {
 public:
  GridSplitter(const HermitianSplit& split, const PGrid& grid, double dt);
  SchrodState step(const SchrodState& state) const;

 private:
  ModePropagator transport_;
  Matrix phase_;
};

/// Classical Lie-split ODE trajectory u^{m+1} = e^{i H2 dt} e^{H1 dt} u^m,
/// entries 0..steps.
std::vector<Vector> lie_split_ode(const HermitianSplit& split, const Vector& u0, double dt,
                                  int steps);

/// max over m = 1..steps and sample points p >= threshold_m of
/// |v^m(p) - e^{-p} u^m| where v^m is the semi-analytic split state.
/// Requires lambda_plus = 0 (threshold_m = 0).
double verify_splitting_exactness(const HermitianSplit& split, const Vector& u0, double dt,
                                  int steps);

/// Same identity for unstable H1, checked on p >= m lambda_plus dt.
double verify_splitting_exactness_shifted(const HermitianSplit& split, const Vector& u0,
                                          double dt, int steps);

struct SplittingProbability {
  double probability = 0.0;
  /// (|u_split(T)| / |u0|)^2 / 2.
  double lemma_value = 0.0;
};

/// Semi-analytic probability of p >= 0 after `steps` split steps.
SplittingProbability splitting_probability(const HermitianSplit& split, const Vector& u0,
                                           double dt, int steps);

/// Same on the Fourier p grid.
SplittingProbability splitting_probability_grid(const HermitianSplit& split, const Vector& u0,
                                                double dt, int steps, const PGrid& grid);

}  // namespace schrodsim
