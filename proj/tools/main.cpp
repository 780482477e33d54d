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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace cli = schrodsim::cli;

int main(int argc, char** argv) {
  CLI::App app{"Schrodingerization experiments"};
  app.set_version_flag("--version", cli::tool_version());

  std::string experiment, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("experiment", experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember(cli::experiment_names()));
  app.add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (default: out_dir key, else current directory)");
  app.add_option("--seed", seed, "Override the configured seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const cli::Experiment exp = *cli::parse_experiment(experiment);
    const cli::ExperimentConfig cfg = cli::load_config_file(exp, config_path, seed);
    if (out_dir.empty()) out_dir = cfg.params["out_dir"].get<std::string>();
    if (out_dir.empty()) out_dir = ".";
    const cli::RunResult result = cli::run(cfg, out_dir);
    for (const auto& f : result.files) std::cout << f.string() << '\n';
    return 0;
  } catch (const schrodsim::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 3;
  } catch (const cli::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const schrodsim::ParameterError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const schrodsim::DimensionError& e) {
    std::cerr << "invalid dimensions: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
