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

// Experiment drivers behind the schrodsim command-line tool: JSON config
// validation, deterministic runs, CSV and manifest emission, and observed
// convergence orders.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "schrodsim/errors.hpp"

namespace schrodsim::cli {

using nlohmann::json;

enum class Experiment {
  ode_schrod,
  fp_conservation1,
  fp_conservation2,
  fp_heat_split,
  fp_fd_circuit,
  eig_scan,
  shift_verify,
  splitting_verify,
};

std::optional<Experiment> parse_experiment(std::string_view name);
const char* experiment_name(Experiment e);
std::vector<std::string> experiment_names();

/// Invalid configuration; key() names the offending entry.
class ConfigError : public ParameterError {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : ParameterError("config key '" + key + "': " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::ode_schrod;
  /// Every parameter of the experiment, defaults filled in.
  json params;
  std::uint64_t seed = 0;
  /// FNV-1a 64-bit digest of the canonical resolved parameters, hex.
  std::string digest;
};

/// Validates `doc` against the experiment's schema. Unknown keys, wrong
/// types and out-of-range values raise ConfigError. A seed override
/// replaces the document's seed.
ExperimentConfig load_config(Experiment experiment, const json& doc,
                             std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config_file(Experiment experiment, const std::filesystem::path& path,
                                  std::optional<std::uint64_t> seed_override = std::nullopt);

struct RunResult {
  std::vector<std::filesystem::path> files;
  json measured;
};

/// Runs the experiment and writes its CSV files and `<experiment>_manifest.json`
/// into out_dir (created if missing).
RunResult run(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct ConvergenceReport {
  /// Least-squares slope of log(error) against log(step).
  double order = 0.0;
  double log_constant = 0.0;
  /// Slopes between consecutive points.
  std::vector<double> local_orders;
};

/// Needs at least three points with strictly monotone steps and positive
/// errors; otherwise ParameterError.
ConvergenceReport convergence_report(const std::vector<double>& steps,
                                     const std::vector<double>& errors);

std::string fnv1a_hex(std::string_view data);

/// Column-oriented CSV table with `#` comment lines on top.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  std::size_t rows() const { return rows_.size(); }
  /// Throws NumericalError if any value is not finite.
  std::string render(const std::vector<std::string>& comments) const;
  void write(const std::filesystem::path& path, const std::vector<std::string>& comments) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

std::string tool_version();

}  // namespace schrodsim::cli
