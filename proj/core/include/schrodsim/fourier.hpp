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

// Unitary discrete Fourier transforms on mode-ordered storage. A length-M
// sequence f_j maps to coefficients
//   c_m = M^{-1/2} sum_j f_j exp(-2 pi i m j / M),   m = -M/2 .. M/2-1,
// stored at position m + M/2. The inverse is the adjoint.

#include <cstddef>

#include "schrodsim/types.hpp"

namespace schrodsim {

/// Physical samples -> ascending-mode coefficients. M must be even.
void to_modes(cplx* data, std::size_t size, std::size_t stride = 1);

/// Ascending-mode coefficients -> physical samples.
void from_modes(cplx* data, std::size_t size, std::size_t stride = 1);

/// Applies to_modes / from_modes along every row of `data` (the p axis of an
/// extended state stored as (system index, p index)).
void rows_to_modes(Matrix& data);
void rows_from_modes(Matrix& data);

/// Applies the transform along every spatial axis of the row index, where
/// rows enumerate a d-dimensional tensor grid with M points per axis and
/// index j_1 M^{d-1} + ... + j_d. Each column is transformed independently.
void columns_to_modes(Matrix& data, int d, int M);
void columns_from_modes(Matrix& data, int d, int M);

/// Ascending signed mode number for storage position j of a length-M axis.
inline long signed_mode(std::size_t j, std::size_t M) {
  return static_cast<long>(j) - static_cast<long>(M / 2);
}

}  // namespace schrodsim
