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

#include "schrodsim/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schrodsim/errors.hpp"
#include "schrodsim/linear_core.hpp"
#include "schrodsim/parallel.hpp"

namespace schrodsim {
namespace {

constexpr Eigen::Index kMaxRows = 4096;

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("sigma must be positive, got " + std::to_string(sigma));
  }
}

void check_problem(const FokkerPlanckProblem& prob) {
  check_sigma(prob.sigma);
  if (prob.V.size() != prob.grid.size()) throw DimensionError("potential length is not M^d");
}

// Multiplies rows of m by the entries of w (diag(w) * m).
Matrix scale_rows(const RealVector& w, const Matrix& m) { return w.cast<cplx>().asDiagonal() * m; }
Matrix scale_cols(const Matrix& m, const RealVector& w) { return m * w.cast<cplx>().asDiagonal(); }

// sum_l P_l diag(weight) P_l.
Matrix weighted_second_order(const XGrid& grid, const RealVector& weight) {
  const Matrix p1 = momentum_operator(grid.M, grid.a, grid.b);
  Matrix sum = Matrix::Zero(grid.size(), grid.size());
  for (int l = 0; l < grid.d; ++l) {
    const Matrix pl = embed_axis(p1, grid, l);
    sum += pl * scale_rows(weight, pl);
  }
  return sum;
}

}  // namespace

XGrid::XGrid(int d_, int M_, double a_, double b_) : d(d_), M(M_), a(a_), b(b_) {
  if (d < 1 || d > 2) throw ParameterError("XGrid: d must be 1 or 2");
  if (M < 2 || M % 2 != 0) throw ParameterError("XGrid: M must be even, got " + std::to_string(M));
  if (!(b > a)) throw ParameterError("XGrid: need b > a");
  if (size() > kMaxRows) {
    throw ResourceError("XGrid: M^d = " + std::to_string(size()) + " exceeds " +
                        std::to_string(kMaxRows));
  }
}

Eigen::Index XGrid::size() const {
  Eigen::Index s = 1;
  for (int l = 0; l < d; ++l) s *= M;
  return s;
}

std::vector<int> XGrid::unflatten(Eigen::Index flat) const {
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int l = d - 1; l >= 0; --l) {
    idx[static_cast<std::size_t>(l)] = static_cast<int>(flat % M);
    flat /= M;
  }
  return idx;
}

double XGrid::cell_volume() const { return std::pow(h(), d); }

Potential Potential::quadratic(double strength) {
  Potential p;
  p.kind = Kind::quadratic;
  p.strength = strength;
  return p;
}

Potential Potential::cosine(double strength, double frequency) {
  Potential p;
  p.kind = Kind::cosine;
  p.strength = strength;
  p.frequency = frequency;
  return p;
}

Potential Potential::table(RealVector values) {
  Potential p;
  p.kind = Kind::table;
  p.values = std::move(values);
  return p;
}

FokkerPlanckProblem make_problem(const XGrid& grid, double sigma, const Potential& potential,
                                 FpForm form) {
  check_sigma(sigma);
  const XGrid g(grid.d, grid.M, grid.a, grid.b);
  FokkerPlanckProblem prob;
  prob.grid = g;
  prob.sigma = sigma;
  prob.form = form;
  const Eigen::Index n = g.size();
  prob.V.resize(n);
  prob.V_grad.resize(n, g.d);
  prob.V_lap.resize(n);

  if (potential.kind == Potential::Kind::table) {
    if (potential.values.size() != n) throw DimensionError("potential table length is not M^d");
    if (!potential.values.allFinite()) throw ParameterError("potential table has non-finite values");
    prob.V = potential.values;
    const Matrix p1 = momentum_operator(g.M, g.a, g.b);
    const Vector v = prob.V.cast<cplx>();
    Vector lap = Vector::Zero(n);
    for (int l = 0; l < g.d; ++l) {
      const Matrix pl = embed_axis(p1, g, l);
      const Vector pv = pl * v;
      prob.V_grad.col(l) = (kI * pv).real();
      lap -= pl * pv;
    }
    prob.V_lap = lap.real();
    prob.warnings.emplace_back(
        "tabulated potential: gradient and Laplacian taken spectrally; inaccurate if V is not "
        "smooth and periodic");
    return prob;
  }

  const double s = potential.strength;
  const double w = kPi * potential.frequency;
  for (Eigen::Index flat = 0; flat < n; ++flat) {
    const std::vector<int> idx = g.unflatten(flat);
    double v = 0.0;
    double lap = 0.0;
    for (int l = 0; l < g.d; ++l) {
      const double x = g.coordinate(idx[static_cast<std::size_t>(l)]);
      if (potential.kind == Potential::Kind::quadratic) {
        v += 0.5 * s * x * x;
        prob.V_grad(flat, l) = s * x;
        lap += s;
      } else {
        v += s * std::cos(w * x);
        prob.V_grad(flat, l) = -s * w * std::sin(w * x);
        lap += -s * w * w * std::cos(w * x);
      }
    }
    prob.V(flat) = v;
    prob.V_lap(flat) = lap;
  }
  if (potential.kind == Potential::Kind::quadratic && s != 0.0) {
    prob.warnings.emplace_back(
        "quadratic potential is not periodic on the box; spectral operators see a kink at the "
        "boundary");
  }
  return prob;
}

RealVector momentum_modes(int M, double a, double b) {
  if (M < 2 || M % 2 != 0) throw ParameterError("momentum_operator: M must be even");
  if (!(b > a)) throw ParameterError("momentum_operator: need b > a");
  RealVector mu(M);
  for (int m = 0; m < M; ++m) mu(m) = 2.0 * kPi * (m - M / 2) / (b - a);
  return mu;
}

Matrix momentum_operator(int M, double a, double b) {
  const RealVector mu = momentum_modes(M, a, b);
  Matrix phi(M, M);
  for (int j = 0; j < M; ++j) {
    for (int m = 0; m < M; ++m) {
      const double angle = 2.0 * kPi * static_cast<double>(static_cast<long>(m - M / 2) * j % M) / M;
      phi(j, m) = std::polar(1.0, angle);
    }
  }
  Matrix p = phi * mu.cast<cplx>().asDiagonal() * phi.adjoint() / static_cast<double>(M);
  return 0.5 * (p + p.adjoint());
}

Matrix embed_axis(const Matrix& op, const XGrid& grid, int axis) {
  if (axis < 0 || axis >= grid.d) throw ParameterError("embed_axis: axis out of range");
  if (op.rows() != grid.M || op.cols() != grid.M) throw DimensionError("embed_axis: op is not M x M");
  Matrix out = Matrix::Identity(1, 1);
  for (int l = 0; l < grid.d; ++l) {
    out = kron(out, l == axis ? op : Matrix::Identity(grid.M, grid.M));
  }
  return out;
}

Matrix assemble_conservation_A(const FokkerPlanckProblem& prob) {
  check_problem(prob);
  const RealVector down = (-prob.V / prob.sigma).array().exp();
  const RealVector up = (prob.V / prob.sigma).array().exp();
  return -prob.sigma * scale_cols(weighted_second_order(prob.grid, down), up);
}

Matrix assemble_symmetric_H(const FokkerPlanckProblem& prob) {
  check_problem(prob);
  const RealVector down = (-prob.V / prob.sigma).array().exp();
  const RealVector half = (prob.V / (2.0 * prob.sigma)).array().exp();
  Matrix h = -prob.sigma * scale_cols(scale_rows(half, weighted_second_order(prob.grid, down)), half);
  return 0.5 * (h + h.adjoint());
}

Matrix negative_laplacian(const XGrid& grid) {
  return weighted_second_order(grid, RealVector::Ones(grid.size()));
}

RealVector heat_form_potential(const FokkerPlanckProblem& prob) {
  check_problem(prob);
  const RealVector grad2 = prob.V_grad.rowwise().squaredNorm();
  return grad2 / (4.0 * prob.sigma) - 0.5 * prob.V_lap;
}

Matrix heat_generator(const FokkerPlanckProblem& prob) {
  const RealVector U = heat_form_potential(prob);
  Matrix h = -prob.sigma * negative_laplacian(prob.grid);
  h.diagonal() -= U.cast<cplx>();
  return 0.5 * (h + h.adjoint());
}

Vector transform_to_heat(const Vector& f, const RealVector& V, double sigma) {
  check_sigma(sigma);
  if (f.size() != V.size()) throw DimensionError("transform_to_heat: shape mismatch");
  return (V / (2.0 * sigma)).array().exp().cast<cplx>() * f.array();
}

Vector transform_from_heat(const Vector& psi, const RealVector& V, double sigma) {
  check_sigma(sigma);
  if (psi.size() != V.size()) throw DimensionError("transform_from_heat: shape mismatch");
  return (-V / (2.0 * sigma)).array().exp().cast<cplx>() * psi.array();
}

RealVector steady_state(const RealVector& V, double sigma) {
  check_sigma(sigma);
  return (-V / sigma).array().exp();
}

std::vector<std::pair<int, double>> positive_eig_scan(const Potential& potential, double sigma,
                                                      const std::vector<int>& M_list, int d,
                                                      double a, double b) {
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    if (M_list[i] % 2 != 0) throw ParameterError("positive_eig_scan: M must be even");
    if (i > 0 && M_list[i] <= M_list[i - 1]) {
      throw ParameterError("positive_eig_scan: M_list must be ascending");
    }
  }
  std::vector<std::pair<int, double>> out(M_list.size());
  parallel_for(M_list.size(), [&](std::size_t i) {
    const FokkerPlanckProblem prob =
        make_problem(XGrid(d, M_list[i], a, b), sigma, potential, FpForm::conservation_I);
    const SpectralData eig = spectral_data(hermitian_split(assemble_conservation_A(prob)));
    out[i] = {M_list[i], eig.lambda_plus};
  });
  return out;
}

}  // namespace schrodsim
