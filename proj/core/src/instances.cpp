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

#include "schrodsim/instances.hpp"

#include <cmath>

namespace schrodsim {

Matrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

Vector random_complex_vector(Eigen::Index n, Rng& rng) { return random_complex_matrix(n, 1, rng); }

Matrix random_hermitian(Eigen::Index n, Rng& rng) {
  const Matrix g = random_complex_matrix(n, n, rng) / std::sqrt(2.0 * static_cast<double>(n));
  return 0.5 * (g + g.adjoint());
}

HermitianSplit random_stable_split(Eigen::Index n, Rng& rng, bool with_phase) {
  const Matrix b = random_complex_matrix(n, n, rng) / std::sqrt(2.0 * static_cast<double>(n));
  const Matrix h2 = with_phase ? random_hermitian(n, rng) : Matrix::Zero(n, n);
  return HermitianSplit::from_parts(-b.adjoint() * b, h2);
}

HermitianSplit random_unstable_split(Eigen::Index n, double delta, Rng& rng) {
  return stabilize(random_stable_split(n, rng), -delta);
}

}  // namespace schrodsim
