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

#include "schrodsim/schrod_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schrodsim/errors.hpp"
#include "schrodsim/fourier.hpp"
#include "schrodsim/parallel.hpp"

namespace schrodsim {

PGrid::PGrid(double L, double R, int Np) : L_(L), R_(R), Np_(Np), dp_(0.0) {
  if (!(std::isfinite(L) && std::isfinite(R)) || !(L < 0.0 && R > 0.0)) {
    throw ParameterError("PGrid: need L < 0 < R");
  }
  if (Np <= 0 || Np % 2 != 0) {
    throw ParameterError("PGrid: Np must be even and positive, got " + std::to_string(Np));
  }
  dp_ = (R - L) / Np;
}

PGrid PGrid::with_spacing(double L, double R, double dp) {
  if (!(dp > 0.0)) throw ParameterError("PGrid: dp must be positive");
  const double count = (R - L) / dp;
  const double rounded = std::round(count);
  if (std::abs(count - rounded) > 1e-9 * std::max(1.0, count) ||
      static_cast<long long>(rounded) % 2 != 0) {
    throw ParameterError("PGrid: (R - L)/dp is not an even integer");
  }
  return PGrid(L, R, static_cast<int>(rounded));
}

double PGrid::mode(int j) const {
  return 2.0 * kPi * static_cast<double>(signed_mode(static_cast<std::size_t>(j),
                                                     static_cast<std::size_t>(Np_))) /
         (R_ - L_);
}

RealVector PGrid::points() const {
  RealVector p(Np_);
  for (int k = 0; k < Np_; ++k) p(k) = point(k);
  return p;
}

RealVector PGrid::modes() const {
  RealVector mu(Np_);
  for (int j = 0; j < Np_; ++j) mu(j) = mode(j);
  return mu;
}

int PGrid::nearest_index(double p) const {
  const double k = std::round((p - L_) / dp_);
  if (!(k >= 0.0 && k < Np_)) throw ParameterError("PGrid: point outside [L, R)");
  return static_cast<int>(k);
}

int PGrid::first_index_at_or_above(double p) const {
  const double k = std::ceil((p - L_) / dp_ - 1e-9);
  if (k <= 0.0) return 0;
  if (k >= Np_) return Np_;
  return static_cast<int>(k);
}

PDomain choose_domain(double lambda_min, double lambda_plus, double T,
                      std::optional<double> L0_opt, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw ParameterError("choose_domain: tail_tol must lie in (0, 1)");
  }
  if (!(T >= 0.0) || !std::isfinite(T)) throw ParameterError("choose_domain: T must be >= 0");
  const double L0 = L0_opt.value_or(std::log(tail_tol));
  if (!(L0 < 0.0)) throw ParameterError("choose_domain: L0 must be negative");
  if (lambda_plus < 0.0) throw ParameterError("choose_domain: lambda_plus must be >= 0");
  const double left = std::floor(L0 - std::abs(std::min(lambda_min, 0.0)) * T);
  const double right = std::max(-std::log(tail_tol), lambda_plus * T);
  const double width = std::exp2(std::ceil(std::log2(right - left)));
  return {left, left + width};
}

SchrodState to_fourier_p(SchrodState state) {
  if (state.representation == PRepresentation::fourier_p) return state;
  rows_to_modes(state.data);
  state.representation = PRepresentation::fourier_p;
  return state;
}

SchrodState to_physical_p(SchrodState state) {
  if (state.representation == PRepresentation::physical_p) return state;
  rows_from_modes(state.data);
  state.representation = PRepresentation::physical_p;
  return state;
}

SchrodState warp_initial(const Vector& u0, const PGrid& grid, const AlphaFunction& alpha) {
  SchrodState state;
  state.data.resize(u0.size(), grid.Np());
  for (int k = 0; k < grid.Np(); ++k) {
    const double p = grid.point(k);
    double a = 1.0;
    if (alpha) {
      a = alpha(p);
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw ParameterError("warp_initial: alpha(p) must be finite and >= 0");
      }
      if (p >= 0.0 && a != 1.0) throw ParameterError("warp_initial: alpha(p) must be 1 for p >= 0");
    }
    state.data.col(k) = std::exp(-a * std::abs(p)) * u0;
  }
  return state;
}

Matrix assemble_hamiltonian(const HermitianSplit& split, const PGrid& grid,
                            std::size_t memory_budget) {
  const auto n = static_cast<std::size_t>(split.n());
  const auto np = static_cast<std::size_t>(grid.Np());
  const std::size_t dim = n * np;
  if (dim != 0 && dim * dim > memory_budget / sizeof(cplx)) {
    throw ResourceError("assemble_hamiltonian: " + std::to_string(dim) + "^2 entries exceed budget");
  }
  const auto N = static_cast<Eigen::Index>(dim);
  Matrix h = Matrix::Zero(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx h1 = split.H1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      const cplx h2 = split.H2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      for (std::size_t j = 0; j < np; ++j) {
        h(static_cast<Eigen::Index>(i * np + j), static_cast<Eigen::Index>(k * np + j)) =
            h1 * grid.mode(static_cast<int>(j)) - h2;
      }
    }
  }
  return h;
}

ModePropagator::ModePropagator(const HermitianSplit& split, const PGrid& grid, double T)
    : T_(T), n_(split.n()), blocks_(static_cast<std::size_t>(grid.Np())) {
  if (!std::isfinite(T)) throw ParameterError("ModePropagator: non-finite T");
  if (split.H2.isZero(0.0)) {
    // H1 alone: one eigendecomposition serves every mode.
    const SpectralData eig = hermitian_eigen(split.H1);
    parallel_for(blocks_.size(), [&](std::size_t j) {
      const double mu = grid.mode(static_cast<int>(j));
      const Vector phases = (-kI * (mu * T) * eig.eigenvalues.cast<cplx>()).array().exp();
      blocks_[j] = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    });
  } else {
    parallel_for(blocks_.size(), [&](std::size_t j) {
      const double mu = grid.mode(static_cast<int>(j));
      const Matrix g = mu * split.H1 - split.H2;
      blocks_[j] = unitary_exp(g, -T);
    });
  }
}

SchrodState ModePropagator::apply(const SchrodState& state) const {
  if (state.n() != n_ || state.Np() != Np()) {
    throw DimensionError("ModePropagator::apply: state shape does not match propagator");
  }
  const bool was_physical = state.representation == PRepresentation::physical_p;
  SchrodState out = to_fourier_p(state);
  parallel_for(blocks_.size(), [&](std::size_t j) {
    const auto col = static_cast<Eigen::Index>(j);
    out.data.col(col) = (blocks_[j] * out.data.col(col)).eval();
  });
  out.time = state.time + T_;
  return was_physical ? to_physical_p(std::move(out)) : out;
}

SchrodState evolve(const HermitianSplit& split, const PGrid& grid, const SchrodState& state,
                   double T) {
  if (state.n() != split.n()) throw DimensionError("evolve: state rows do not match system size");
  if (state.Np() != grid.Np()) throw DimensionError("evolve: state columns do not match grid");
  if (!std::isfinite(T)) throw ParameterError("evolve: non-finite T");
  // One-shot evolution: build each mode's exponential, apply it and drop it.
  const bool was_physical = state.representation == PRepresentation::physical_p;
  SchrodState out = to_fourier_p(state);
  const auto np = static_cast<std::size_t>(grid.Np());
  if (split.H2.isZero(0.0)) {
    const SpectralData eig = hermitian_eigen(split.H1);
    const Matrix coeff = eig.eigenvectors.adjoint() * out.data;
    Matrix rotated(coeff.rows(), coeff.cols());
    for (int j = 0; j < grid.Np(); ++j) {
      const double mu = grid.mode(j);
      for (Eigen::Index i = 0; i < coeff.rows(); ++i) {
        rotated(i, j) = std::polar(1.0, -mu * T * eig.eigenvalues(i)) * coeff(i, j);
      }
    }
    out.data = eig.eigenvectors * rotated;
  } else {
    parallel_for(np, [&](std::size_t j) {
      const auto col = static_cast<Eigen::Index>(j);
      const Matrix g = grid.mode(static_cast<int>(j)) * split.H1 - split.H2;
      out.data.col(col) = (unitary_exp(g, -T) * out.data.col(col)).eval();
    });
  }
  out.time = state.time + T;
  return was_physical ? to_physical_p(std::move(out)) : out;
}

Vector transport_oracle(const SpectralData& spectral, const Vector& u0, double t, double p) {
  if (u0.size() != spectral.eigenvectors.rows()) {
    throw DimensionError("transport_oracle: u0 length does not match system size");
  }
  const Vector coeff = spectral.eigenvectors.adjoint() * u0;
  Vector weighted(coeff.size());
  for (Eigen::Index i = 0; i < coeff.size(); ++i) {
    weighted(i) = std::exp(-std::abs(p - spectral.eigenvalues(i) * t)) * coeff(i);
  }
  return spectral.eigenvectors * weighted;
}

Vector transport_oracle(const HermitianSplit& split, const Vector& u0, double t, double p) {
  const double scale = std::max(split.H1.norm(), 1.0);
  if (max_abs(split.H2) > 1e-14 * scale) {
    throw ParameterError("transport_oracle: requires H2 = 0; use PProfile for the general case");
  }
  return transport_oracle(spectral_data(split), u0, t, p);
}

}  // namespace schrodsim
