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

// Square complex linear systems du/dt = A u: Hermitian splitting, spectral
// data of the Hermitian part, dense matrix exponentials used as the
// brute-force reference propagator, and the exponential shift A -> A - cI.

#include "schrodsim/types.hpp"

namespace schrodsim {

/// A = H1 + i H2 with H1 = (A + A^dag)/2 and H2 = (A - A^dag)/(2i).
struct HermitianSplit {
  Matrix A;
  Matrix H1;
  Matrix H2;

  Eigen::Index n() const { return A.rows(); }
  Matrix reconstruct() const { return H1 + kI * H2; }

  /// Builds the split directly from its Hermitian parts. Both are
  /// symmetrized so the type invariants hold exactly.
  static HermitianSplit from_parts(const Matrix& h1, const Matrix& h2);
};

/// Eigen-decomposition of H1, eigenvalues ascending.
struct SpectralData {
  RealVector eigenvalues;
  Matrix eigenvectors;  // unitary Q with Q^dag H1 Q = diag(eigenvalues)
  double lambda_plus = 0.0;  // max(0, max eigenvalue)
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

HermitianSplit hermitian_split(const Matrix& a);

SpectralData spectral_data(const HermitianSplit& split);

/// Eigen-decomposition of a Hermitian matrix with deterministic ordering:
/// ascending eigenvalues, each eigenvector's first non-negligible entry made
/// real positive, near-equal eigenvalues ordered by that entry's index.
SpectralData hermitian_eigen(const Matrix& h);

/// e^{A} by scaling and squaring with a diagonal Pade approximant of degree
/// 3, 5, 7, 9 or 13 chosen from the 1-norm.
Matrix expm_pade(const Matrix& a);

/// e^{A} for a normal matrix through its (diagonal) Schur form.
Matrix expm_normal(const Matrix& a);

/// e^{i t H} for Hermitian H; exactly unitary up to rounding.
Matrix unitary_exp(const Matrix& h, double t);

/// True when A A^dag = A^dag A to `rel_tol` relative to ||A||_F^2.
bool is_normal(const Matrix& a, double rel_tol = 1e-13);

/// e^{tA}, routed through expm_normal for normal A and expm_pade otherwise.
Matrix expm(const Matrix& a, double t = 1.0);

/// u(t) = e^{tA} u0. Throws OverflowError when the result leaves the
/// double range.
Vector reference_evolve(const Matrix& a, const Vector& u0, double t);

/// Split of A - cI; the solution map is scaled by e^{-ct}.
HermitianSplit stabilize(const HermitianSplit& split, double c);

}  // namespace schrodsim
