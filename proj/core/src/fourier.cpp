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

#include "schrodsim/fourier.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "schrodsim/errors.hpp"

namespace schrodsim {
namespace {

// kissfft keeps a per-size twiddle cache inside the FFT object, so each
// thread gets its own.
Eigen::FFT<double>& local_fft() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return fft;
}

void check_even(std::size_t size) {
  if (size == 0 || size % 2 != 0) {
    throw ParameterError("Fourier transform length must be even and positive, got " +
                         std::to_string(size));
  }
}

void transform(cplx* data, std::size_t size, std::size_t stride, bool forward) {
  check_even(size);
  const std::size_t half = size / 2;
  thread_local std::vector<cplx> in, out;
  in.resize(size);
  out.resize(size);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  if (forward) {
    for (std::size_t j = 0; j < size; ++j) in[j] = data[j * stride];
    local_fft().fwd(out, in);
    // FFT index m mod size -> storage position m + size/2.
    for (std::size_t j = 0; j < size; ++j) data[j * stride] = scale * out[(j + half) % size];
  } else {
    for (std::size_t j = 0; j < size; ++j) in[(j + half) % size] = data[j * stride];
    local_fft().inv(out, in);
    for (std::size_t j = 0; j < size; ++j) data[j * stride] = scale * out[j];
  }
}

void along_axes(Matrix& data, int d, int M, bool forward) {
  if (d < 1 || M < 2) throw ParameterError("columns transform: need d >= 1 and M >= 2");
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(M);
  if (static_cast<std::size_t>(data.rows()) != total) {
    throw DimensionError("columns transform: row count is not M^d");
  }
  const std::size_t m = static_cast<std::size_t>(M);
  for (Eigen::Index col = 0; col < data.cols(); ++col) {
    cplx* base = data.col(col).data();
    std::size_t stride = total;
    for (int a = 0; a < d; ++a) {
      stride /= m;
      const std::size_t block = stride * m;
      for (std::size_t outer = 0; outer < total; outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
          transform(base + outer + inner, m, stride, forward);
        }
      }
    }
  }
}

}  // namespace

void to_modes(cplx* data, std::size_t size, std::size_t stride) {
  transform(data, size, stride, true);
}

void from_modes(cplx* data, std::size_t size, std::size_t stride) {
  transform(data, size, stride, false);
}

void rows_to_modes(Matrix& data) {
  const auto cols = static_cast<std::size_t>(data.cols());
  const auto stride = static_cast<std::size_t>(data.rows());
  for (Eigen::Index r = 0; r < data.rows(); ++r) transform(data.data() + r, cols, stride, true);
}

void rows_from_modes(Matrix& data) {
  const auto cols = static_cast<std::size_t>(data.cols());
  const auto stride = static_cast<std::size_t>(data.rows());
  for (Eigen::Index r = 0; r < data.rows(); ++r) transform(data.data() + r, cols, stride, false);
}

void columns_to_modes(Matrix& data, int d, int M) { along_axes(data, d, M, true); }

void columns_from_modes(Matrix& data, int d, int M) { along_axes(data, d, M, false); }

}  // namespace schrodsim
