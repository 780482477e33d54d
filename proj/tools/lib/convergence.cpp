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

#include <cmath>

#include "experiments.hpp"

namespace schrodsim::cli {

ConvergenceReport convergence_report(const std::vector<double>& steps,
                                     const std::vector<double>& errors) {
  if (steps.size() != errors.size()) throw ParameterError("convergence_report: length mismatch");
  const std::size_t n = steps.size();
  if (n < 3) throw ParameterError("convergence_report: needs at least three points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(steps[i] > 0.0) || !std::isfinite(steps[i])) {
      throw ParameterError("convergence_report: steps must be positive");
    }
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw ParameterError("convergence_report: errors must be positive and finite");
    }
  }
  const bool up = steps[1] > steps[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (up ? !(steps[i] > steps[i - 1]) : !(steps[i] < steps[i - 1])) {
      throw ParameterError("convergence_report: steps must be strictly monotone");
    }
  }

  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += std::log(steps[i]);
    sy += std::log(errors[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(steps[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  ConvergenceReport r;
  r.order = sxy / sxx;
  r.log_constant = my - r.order * mx;
  for (std::size_t i = 1; i < n; ++i) {
    r.local_orders.push_back(std::log(errors[i] / errors[i - 1]) / std::log(steps[i] / steps[i - 1]));
  }
  return r;
}

}  // namespace schrodsim::cli
