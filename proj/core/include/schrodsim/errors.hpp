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

#include <stdexcept>
#include <string>

namespace schrodsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of the operands do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter lies outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside the region where its result is valid,
/// e.g. restoring below the unstable-mode threshold.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double threshold)
      : Error(what), threshold_(threshold) {}
  double threshold() const noexcept { return threshold_; }

 private:
  double threshold_;
};

/// An iterative kernel failed; carries the residual it stopped at.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Result magnitude exceeds the double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A state with zero norm where a normalized quantity was requested.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// Requested problem size exceeds a configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Division by a vanishing norm.
class DivisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace schrodsim
