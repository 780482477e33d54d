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

#include "schrodsim/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schrodsim/errors.hpp"
#include "schrodsim/fourier.hpp"
#include "schrodsim/parallel.hpp"
#include "schrodsim/recovery.hpp"

namespace schrodsim {
namespace {

Matrix hermitian_exp(const SpectralData& eig, double t) {
  const Vector scale = (t * eig.eigenvalues).array().exp().cast<cplx>();
  return eig.eigenvectors * scale.asDiagonal() * eig.eigenvectors.adjoint();
}

void require_stable(const SpectralData& eig, const HermitianSplit& split, double horizon,
                    const char* what) {
  if (eig.lambda_plus > 1e-12 * std::max(1.0, split.H1.norm())) {
    throw PreconditionError(std::string(what) + ": H1 has a positive eigenvalue; identity holds "
                                                "only above lambda_plus*t",
                            eig.lambda_plus * horizon);
  }
}

double max_deviation(const HermitianSplit& split, const Vector& u0, double dt, int steps,
                     double lambda_plus) {
  static constexpr double kOffsets[] = {0.0, 0.05, 0.3, 1.0, 2.5, 6.0};
  const ProfileSplitter splitter(split, dt);
  const std::vector<Vector> u = lie_split_ode(split, u0, dt, steps);
  PProfile v = PProfile::warped(u0);
  double worst = 0.0;
  for (int m = 1; m <= steps; ++m) {
    v = splitter.step(v);
    const double threshold = m * lambda_plus * dt;
    for (double off : kOffsets) {
      const double p = threshold + off;
      const Vector expect = std::exp(-p) * u[static_cast<std::size_t>(m)];
      worst = std::max(worst, (v.evaluate(p) - expect).norm());
    }
  }
  return worst;
}

}  // namespace

SplitSchedule SplitSchedule::for_interval(double T, double dt_hint) {
  if (!(dt_hint > 0.0) || !std::isfinite(dt_hint)) throw ParameterError("dt must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("T must be positive");
  const double ratio = T / dt_hint;
  const double steps = std::max(1.0, std::round(ratio));
  if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
    throw ParameterError("T / dt is not an integer");
  }
  SplitSchedule s;
  s.steps = static_cast<int>(steps);
  s.dt = T / s.steps;
  return s;
}

HeatSplitPropagator::HeatSplitPropagator(const XGrid& xgrid, const RealVector& U, double sigma,
                                         const PGrid& grid, double dt)
    : xgrid_(xgrid), dt_(dt) {
  const Eigen::Index n = xgrid.size();
  if (U.size() != n) throw DimensionError("HeatSplitPropagator: U length is not M^d");
  if (!(dt > 0.0)) throw ParameterError("HeatSplitPropagator: dt must be positive");
  if (sigma < 0.0) throw ParameterError("HeatSplitPropagator: sigma must be >= 0");
  const RealVector kx = momentum_modes(xgrid.M, xgrid.a, xgrid.b);
  RealVector k2(n);
  for (Eigen::Index flat = 0; flat < n; ++flat) {
    double s = 0.0;
    for (int m : xgrid.unflatten(flat)) s += kx(m) * kx(m);
    k2(flat) = s;
  }
  const RealVector mu = grid.modes();
  kinetic_.resize(n, grid.Np());
  potential_.resize(n, grid.Np());
  for (int j = 0; j < grid.Np(); ++j) {
    for (Eigen::Index r = 0; r < n; ++r) {
      kinetic_(r, j) = std::polar(1.0, sigma * k2(r) * mu(j) * dt);
      potential_(r, j) = std::polar(1.0, U(r) * mu(j) * dt);
    }
  }
}

SchrodState HeatSplitPropagator::step(SchrodState state) const {
  if (state.basis != SystemBasis::fourier_x || state.representation != PRepresentation::fourier_p) {
    throw ParameterError("heat split step: state must be in (fourier_x, fourier_p) form");
  }
  if (state.data.rows() != kinetic_.rows() || state.data.cols() != kinetic_.cols()) {
    throw DimensionError("heat split step: state shape does not match propagator");
  }
  state.data.array() *= kinetic_.array();
  columns_from_modes(state.data, xgrid_.d, xgrid_.M);
  state.data.array() *= potential_.array();
  columns_to_modes(state.data, xgrid_.d, xgrid_.M);
  state.time += dt_;
  return state;
}

SchrodState HeatSplitPropagator::run(SchrodState state, int steps) const {
  for (int m = 0; m < steps; ++m) state = step(std::move(state));
  return state;
}

SchrodState heat_split_step(const SchrodState& state, const RealVector& U, double sigma,
                            const XGrid& xgrid, const PGrid& grid, double dt) {
  return HeatSplitPropagator(xgrid, U, sigma, grid, dt).step(state);
}

SchrodState heat_initial_state(const Vector& psi0, const XGrid& xgrid, const PGrid& grid) {
  if (psi0.size() != xgrid.size()) throw DimensionError("heat_initial_state: psi0 length is not M^d");
  SchrodState s = to_fourier_p(warp_initial(psi0, grid));
  columns_to_modes(s.data, xgrid.d, xgrid.M);
  s.basis = SystemBasis::fourier_x;
  return s;
}

SchrodState heat_to_physical(SchrodState state, const XGrid& xgrid) {
  if (state.basis == SystemBasis::fourier_x) {
    columns_from_modes(state.data, xgrid.d, xgrid.M);
    state.basis = SystemBasis::physical;
  }
  return to_physical_p(std::move(state));
}

PProfile PProfile::warped(const Vector& u0) {
  PProfile v(u0.size());
  v.add(0.0, u0);
  return v;
}

void PProfile::add(double shift, const Vector& coeff) {
  if (coeff.size() != n_) throw DimensionError("PProfile::add: coefficient length mismatch");
  terms_.push_back({shift, coeff});
}

void PProfile::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const Term& x, const Term& y) { return x.shift < y.shift; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (Term& t : terms_) {
    if (!merged.empty() &&
        std::abs(t.shift - merged.back().shift) <= 1e-13 * std::max(1.0, std::abs(t.shift))) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.isZero(0.0); });
  terms_ = std::move(merged);
}

Vector PProfile::evaluate(double p) const {
  Vector out = Vector::Zero(n_);
  for (const Term& t : terms_) out += std::exp(-std::abs(p - t.shift)) * t.coeff;
  return out;
}

double pair_integral(double a, double b) {
  const double gap = std::abs(a - b);
  return (1.0 + gap) * std::exp(-gap);
}

double pair_integral_above(double a, double b, double threshold) {
  if (a > b) std::swap(a, b);
  const double inner = std::exp(a - b);
  if (threshold >= b) return 0.5 * std::exp(a + b - 2.0 * threshold);
  if (threshold >= a) return (b - threshold) * inner + 0.5 * inner;
  return 0.5 * (inner - std::exp(2.0 * threshold - a - b)) + (b - a) * inner + 0.5 * inner;
}

double PProfile::norm_squared() const {
  double sum = 0.0;
  for (std::size_t s = 0; s < terms_.size(); ++s) {
    sum += terms_[s].coeff.squaredNorm();
    for (std::size_t t = s + 1; t < terms_.size(); ++t) {
      sum += 2.0 * std::real(terms_[s].coeff.dot(terms_[t].coeff)) *
             pair_integral(terms_[s].shift, terms_[t].shift);
    }
  }
  return sum;
}

double PProfile::norm_squared_above(double threshold) const {
  double sum = 0.0;
  for (std::size_t s = 0; s < terms_.size(); ++s) {
    const Term& x = terms_[s];
    sum += x.coeff.squaredNorm() * pair_integral_above(x.shift, x.shift, threshold);
    for (std::size_t t = s + 1; t < terms_.size(); ++t) {
      sum += 2.0 * std::real(x.coeff.dot(terms_[t].coeff)) *
             pair_integral_above(x.shift, terms_[t].shift, threshold);
    }
  }
  return sum;
}

SchrodState PProfile::sample(const PGrid& grid, double time) const {
  SchrodState s;
  s.data.resize(n_, grid.Np());
  for (int k = 0; k < grid.Np(); ++k) s.data.col(k) = evaluate(grid.point(k));
  s.time = time;
  return s;
}

ProfileSplitter::ProfileSplitter(const HermitianSplit& split, double dt)
    : spectral_(spectral_data(split)), phase_(unitary_exp(split.H2, dt)), dt_(dt) {}

PProfile ProfileSplitter::step(const PProfile& v) const {
  if (v.n() != spectral_.eigenvectors.rows()) {
    throw DimensionError("ProfileSplitter::step: profile size does not match system");
  }
  const Matrix& q = spectral_.eigenvectors;
  PProfile next(v.n());
  for (const PProfile::Term& t : v.terms()) {
    const Vector c = q.adjoint() * t.coeff;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (c(i) == cplx(0.0)) continue;
      next.add(t.shift + spectral_.eigenvalues(i) * dt_, q.col(i) * c(i));
    }
  }
  next.canonicalize();
  PProfile out(v.n());
  for (const PProfile::Term& t : next.terms()) out.add(t.shift, phase_ * t.coeff);
  return out;
}

PProfile general_split_step(const HermitianSplit& split, const PProfile& v, double dt) {
  return ProfileSplitter(split, dt).step(v);
}

GridSplitter::GridSplitter(const HermitianSplit& split, const PGrid& grid, double dt)
    : transport_(HermitianSplit::from_parts(split.H1, Matrix::Zero(split.n(), split.n())), grid,
                 dt),
      phase_(unitary_exp(split.H2, dt)) {}

SchrodState GridSplitter::step(const SchrodState& state) const {
  SchrodState out = transport_.apply(state);
  out.data = phase_ * out.data;
  return out;
}

std::vector<Vector> lie_split_ode(const HermitianSplit& split, const Vector& u0, double dt,
                                  int steps) {
  if (u0.size() != split.n()) throw DimensionError("lie_split_ode: u0 length mismatch");
  if (steps < 0) throw ParameterError("lie_split_ode: steps must be >= 0");
  const Matrix step = unitary_exp(split.H2, dt) * hermitian_exp(spectral_data(split), dt);
  std::vector<Vector> u;
  u.reserve(static_cast<std::size_t>(steps) + 1);
  u.push_back(u0);
  for (int m = 0; m < steps; ++m) u.push_back(step * u.back());
  return u;
}

double verify_splitting_exactness(const HermitianSplit& split, const Vector& u0, double dt,
                                  int steps) {
  const SpectralData eig = spectral_data(split);
  require_stable(eig, split, dt * steps, "verify_splitting_exactness");
  return max_deviation(split, u0, dt, steps, 0.0);
}

double verify_splitting_exactness_shifted(const HermitianSplit& split, const Vector& u0,
                                          double dt, int steps) {
  return max_deviation(split, u0, dt, steps, spectral_data(split).lambda_plus);
}

SplittingProbability splitting_probability(const HermitianSplit& split, const Vector& u0,
                                           double dt, int steps) {
  const SpectralData eig = spectral_data(split);
  require_stable(eig, split, dt * steps, "splitting_probability");
  const ProfileSplitter splitter(split, dt);
  PProfile v = PProfile::warped(u0);
  for (int m = 0; m < steps; ++m) v = splitter.step(v);
  const double total = v.norm_squared();
  if (!(total > 0.0)) throw DegenerateStateError("splitting_probability: zero state");
  SplittingProbability out;
  out.probability = v.norm_squared_above(0.0) / total;
  const Vector uT = lie_split_ode(split, u0, dt, steps).back();
  out.lemma_value = 0.5 * uT.squaredNorm() / u0.squaredNorm();
  return out;
}

SplittingProbability splitting_probability_grid(const HermitianSplit& split, const Vector& u0,
                                                double dt, int steps, const PGrid& grid) {
  const SpectralData eig = spectral_data(split);
  require_stable(eig, split, dt * steps, "splitting_probability_grid");
  const GridSplitter splitter(split, grid, dt);
  SchrodState s = to_fourier_p(warp_initial(u0, grid));
  for (int m = 0; m < steps; ++m) s = splitter.step(s);
  SplittingProbability out;
  out.probability = projection_probability(s, grid, 0.0);
  const Vector uT = lie_split_ode(split, u0, dt, steps).back();
  out.lemma_value = 0.5 * uT.squaredNorm() / u0.squaredNorm();
  return out;
}

}  // namespace schrodsim
