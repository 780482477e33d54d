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

#include "schrodsim/linear_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "schrodsim/errors.hpp"

namespace schrodsim {
namespace {

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
  }
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw ParameterError(std::string(what) + ": non-finite entry");
}

// Pade numerator/denominator pieces: returns (U, V) with e^A ~ (V-U)^{-1}(V+U).
template <std::size_t N>
void pade_small(const Matrix& a, const std::array<double, N>& b, Matrix& u, Matrix& v) {
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix odd = b[1] * ident;
  Matrix even = b[0] * ident;
  Matrix power = ident;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    even += b[k] * power;
    if (k + 1 < N) odd += b[k + 1] * power;
  }
  u = a * odd;
  v = even;
}

void pade13(const Matrix& a, Matrix& u, Matrix& v) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix inner_u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                         b[3] * a2 + b[1] * ident;
  u = a * inner_u;
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
      b[0] * ident;
}

}  // namespace

HermitianSplit HermitianSplit::from_parts(const Matrix& h1, const Matrix& h2) {
  require_square(h1, "HermitianSplit::from_parts(H1)");
  require_square(h2, "HermitianSplit::from_parts(H2)");
  if (h1.rows() != h2.rows()) throw DimensionError("HermitianSplit::from_parts: H1 and H2 differ in size");
  HermitianSplit s;
  s.H1 = 0.5 * (h1 + h1.adjoint());
  s.H2 = 0.5 * (h2 + h2.adjoint());
  s.A = s.H1 + kI * s.H2;
  return s;
}

HermitianSplit hermitian_split(const Matrix& a) {
  require_square(a, "hermitian_split");
  require_finite(a, "hermitian_split");
  HermitianSplit s;
  s.A = a;
  s.H1 = 0.5 * (a + a.adjoint());
  s.H2 = (a - a.adjoint()) / (2.0 * kI);
  // Rounding in the division can leave a last-bit asymmetry; fold it away.
  s.H1 = 0.5 * (s.H1 + s.H1.adjoint()).eval();
  s.H2 = 0.5 * (s.H2 + s.H2.adjoint()).eval();
  return s;
}

SpectralData hermitian_eigen(const Matrix& h) {
  require_square(h, "hermitian_eigen");
  const Eigen::Index n = h.rows();
  SpectralData out;
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigen: eigensolver did not converge", h.norm());
  }
  RealVector values = solver.eigenvalues();
  Matrix vectors = solver.eigenvectors();

  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> first_nonzero(n, 0);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto col = vectors.col(j);
    Eigen::Index k = 0;
    while (k + 1 < n && std::abs(col(k)) <= 1e-12) ++k;
    first_nonzero[j] = k;
    col *= std::conj(col(k)) / std::abs(col(k));
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (std::abs(values(x) - values(y)) > 1e-12 * scale) return values(x) < values(y);
    return first_nonzero[x] < first_nonzero[y];
  });

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = values(order[j]);
    out.eigenvectors.col(j) = vectors.col(order[j]);
  }
  const double residual =
      (h * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal()).norm();
  if (!(residual <= std::max(1e-10 * h.norm(), 1e-14))) {
    throw NumericalError("hermitian_eigen: residual above tolerance", residual);
  }
  out.lambda_min = out.eigenvalues.minCoeff();
  out.lambda_max = out.eigenvalues.maxCoeff();
  out.lambda_plus = std::max(0.0, out.lambda_max);
  return out;
}

SpectralData spectral_data(const HermitianSplit& split) { return hermitian_eigen(split.H1); }

Matrix expm_pade(const Matrix& a) {
  require_square(a, "expm_pade");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  static constexpr std::array<double, 4> b3 = {120.0, 60.0, 12.0, 1.0};
  static constexpr std::array<double, 6> b5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr std::array<double, 8> b7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                               25200.0,    1512.0,    56.0,      1.0};
  static constexpr std::array<double, 10> b9 = {
      17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
      2162160.0,     110880.0,     3960.0,       90.0,        1.0};

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  Matrix u, v;
  int squarings = 0;
  if (norm1 <= 1.495585217958292e-2) {
    pade_small(a, b3, u, v);
  } else if (norm1 <= 2.539398330063230e-1) {
    pade_small(a, b5, u, v);
  } else if (norm1 <= 9.504178996162932e-1) {
    pade_small(a, b7, u, v);
  } else if (norm1 <= 2.097847961257068e0) {
    pade_small(a, b9, u, v);
  } else {
    constexpr double theta13 = 5.371920351148152;
    if (norm1 > theta13) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
    pade13(a / std::ldexp(1.0, squarings), u, v);
  }
  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

Matrix expm_normal(const Matrix& a) {
  require_square(a, "expm_normal");
  if (a.rows() == 0) return a;
  Eigen::ComplexSchur<Matrix> schur(a);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("expm_normal: Schur decomposition did not converge", a.norm());
  }
  const Matrix& q = schur.matrixU();
  const Vector diag = schur.matrixT().diagonal();
  const Vector exps = diag.array().exp();
  return q * exps.asDiagonal() * q.adjoint();
}

Matrix unitary_exp(const Matrix& h, double t) {
  const SpectralData eig = hermitian_eigen(h);
  const Vector phases = (kI * t * eig.eigenvalues.cast<cplx>()).array().exp();
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

bool is_normal(const Matrix& a, double rel_tol) {
  require_square(a, "is_normal");
  const double scale = a.squaredNorm();
  if (scale == 0.0) return true;
  return (a * a.adjoint() - a.adjoint() * a).norm() <= rel_tol * scale;
}

Matrix expm(const Matrix& a, double t) {
  require_square(a, "expm");
  if (!std::isfinite(t)) throw ParameterError("expm: non-finite time");
  const Matrix scaled = t * a;
  Matrix result = is_normal(scaled) ? expm_normal(scaled) : expm_pade(scaled);
  if (!result.allFinite()) throw OverflowError("expm: result overflows double range");
  return result;
}

Vector reference_evolve(const Matrix& a, const Vector& u0, double t) {
  require_square(a, "reference_evolve");
  if (u0.size() != a.rows()) throw DimensionError("reference_evolve: u0 length does not match A");
  if (!std::isfinite(t)) throw ParameterError("reference_evolve: non-finite time");
  Vector u = expm(a, t) * u0;
  if (!u.allFinite()) throw OverflowError("reference_evolve: solution overflows double range");
  return u;
}

HermitianSplit stabilize(const HermitianSplit& split, double c) {
  HermitianSplit s = split;
  if (c == 0.0) return s;
  const Eigen::Index n = split.n();
  s.H1 -= c * Matrix::Identity(n, n);
  s.A -= c * Matrix::Identity(n, n);
  return s;
}

}  // namespace schrodsim
