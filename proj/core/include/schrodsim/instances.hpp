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

// Seeded random test instances. Stable systems use H1 = -B^dag B, which is
// negative semi-definite by construction.

#include <cstdint>
#include <random>

#include "schrodsim/linear_core.hpp"

namespace schrodsim {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
Matrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Vector random_complex_vector(Eigen::Index n, Rng& rng);
/// (G + G^dag)/2 for a random complex G scaled by 1/sqrt(2n).
Matrix random_hermitian(Eigen::Index n, Rng& rng);

/// H1 = -B^dag B with B = G/sqrt(2n), H2 random Hermitian (zero when
/// with_phase is false).
HermitianSplit random_stable_split(Eigen::Index n, Rng& rng, bool with_phase = true);

/// random_stable_split shifted by +delta I, so lambda_plus = delta + lambda_max(-B^dag B).
HermitianSplit random_unstable_split(Eigen::Index n, double delta, Rng& rng);

}  // namespace schrodsim
