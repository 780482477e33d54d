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

#include "experiments.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace schrodsim::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("schrodsim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int exit_code(const std::string& args) {
  const std::string cmd = std::string(SCHRODSIM_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Config, DefaultsAreFilledAndDigestIsStable) {
  const ExperimentConfig a = load_config(Experiment::eig_scan, json::object());
  const ExperimentConfig b = load_config(Experiment::eig_scan, json{{"M_list", {16, 32, 64, 128}}});
  EXPECT_EQ(a.params["sigma"], 1.0);
  EXPECT_EQ(a.digest, b.digest);
  EXPECT_EQ(a.digest.size(), 16u);
  EXPECT_NE(a.digest, load_config(Experiment::eig_scan, json{{"sigma", 0.5}}).digest);
}

TEST(Config, UnknownKeyIsNamed) {
  try {
    load_config(Experiment::shift_verify, json{{"n_xs", {1, 2}}});
    FAIL() << "no exception";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "n_xs");
  }
}

TEST(Config, RangeAndTypeErrors) {
  EXPECT_THROW(load_config(Experiment::fp_conservation1, json{{"M", 15}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::fp_conservation1, json{{"sigma", 0.0}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::ode_schrod, json{{"T", "one"}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::ode_schrod, json{{"dp_list", {0.1, 0.2, 0.15}}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::fp_heat_split, json{{"stage_order", "phase_then_transport"}}),
               ConfigError);
  EXPECT_THROW(load_config(Experiment::eig_scan, json{{"experiment", "shift_verify"}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::fp_heat_split, json{{"dt_list", {0.04, 0.02, 0.01}}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::eig_scan, json{{"potential", {{"kind", "table"}}}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::eig_scan, json{{"potential", {{"shape", "cosine"}}}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::fp_fd_circuit, json{{"n_x", 2}, {"k", 4}}), ConfigError);
  EXPECT_THROW(load_config(Experiment::eig_scan, json::array()), ConfigError);
}

TEST(Config, SeedOverride) {
  const ExperimentConfig c = load_config(Experiment::splitting_verify, json{{"seed", 3}}, 11);
  EXPECT_EQ(c.seed, 11u);
  EXPECT_EQ(c.params["seed"], 11);
}

TEST(Convergence, SyntheticSlopes) {
  const std::vector<double> h = {0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e1, e2;
  for (double x : h) {
    e1.push_back(3.0 * x);
    e2.push_back(0.7 * x * x);
  }
  EXPECT_NEAR(convergence_report(h, e1).order, 1.0, 1e-12);
  const ConvergenceReport r2 = convergence_report(h, e2);
  EXPECT_NEAR(r2.order, 2.0, 1e-12);
  EXPECT_NEAR(std::exp(r2.log_constant), 0.7, 1e-12);
  ASSERT_EQ(r2.local_orders.size(), 3u);
  for (double o : r2.local_orders) EXPECT_NEAR(o, 2.0, 1e-12);
}

TEST(Convergence, RejectsBadInput) {
  EXPECT_THROW(convergence_report({0.1, 0.05}, {1.0, 0.5}), ParameterError);
  EXPECT_THROW(convergence_report({0.1, 0.05, 0.07}, {1.0, 0.5, 0.6}), ParameterError);
  EXPECT_THROW(convergence_report({0.1, 0.05, 0.025}, {1.0, 0.0, 0.6}), ParameterError);
}

TEST(Csv, RejectsNonFinite) {
  CsvTable t({"a", "b"});
  t.add_row({1.0, 2.5});
  EXPECT_EQ(t.render({"c"}), "# c\na,b\n1,2.5\n");
  t.add_row({1.0, std::nan("")});
  EXPECT_THROW(t.render({}), NumericalError);
  EXPECT_THROW(t.add_row({1.0}), DimensionError);
}

TEST(Run, EigScanWritesTableAndCaveat) {
  const fs::path dir = scratch("eig");
  const RunResult r = run(load_config(Experiment::eig_scan, json{{"M_list", {16, 32}}}), dir);
  const std::string csv = slurp(dir / "eig_scan_lambda_plus.csv");
  EXPECT_NE(csv.find("M,lambda_plus\n16,"), std::string::npos);
  const json manifest = json::parse(slurp(dir / "eig_scan_manifest.json"));
  ASSERT_EQ(manifest["notes"].size(), 1u);
  EXPECT_NE(manifest["notes"][0].get<std::string>().find("sigma"), std::string::npos);
  EXPECT_EQ(r.measured["lambda_plus"].size(), 2u);
}

TEST(Run, ShiftVerifyWithinTolerance) {
  const fs::path dir = scratch("shift");
  const RunResult r = run(load_config(Experiment::shift_verify, json::object()), dir);
  EXPECT_LE(r.measured["max_shift_error"].get<double>(), 1e-12);
  EXPECT_LE(r.measured["max_fd_eigenvalue_error"].get<double>(), 1e-12);
}

TEST(Run, ZeroSystemGivesHalfProbability) {
  const fs::path dir = scratch("zero");
  const json doc = {{"system", "zero"}, {"n", 3}, {"dp_list", {0.0625, 0.03125, 0.015625}}};
  run(load_config(Experiment::ode_schrod, doc), dir);
  std::ifstream in(dir / "ode_schrod_errors.csv");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'i') continue;
    std::vector<double> v;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 12u);
    EXPECT_LT(v[5], 1e-12);                       // restored u(T) = u0
    EXPECT_NEAR(v[6], 0.5, 5.0 * v[1]);           // probability
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST(Run, RerunIsByteIdentical) {
  const json doc = {{"instances", 2}, {"n", 3}, {"steps", 4}, {"seed", 5}};
  const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
  const RunResult ra = run(load_config(Experiment::splitting_verify, doc), a);
  run(load_config(Experiment::splitting_verify, doc), b);
  for (const auto& f : ra.files) EXPECT_EQ(slurp(f), slurp(b / f.filename())) << f;
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch("binary");
  auto write = [&](const std::string& name, const json& doc) {
    std::ofstream(dir / name) << doc.dump();
    return (dir / name).string();
  };
  const std::string out = " --out " + (dir / "out").string();
  EXPECT_EQ(exit_code("shift_verify --config " + write("ok.json", {{"n_x_list", {1, 2}}}) + out), 0);
  EXPECT_EQ(exit_code("shift_verify --config " + write("bad.json", {{"bogus", 1}}) + out), 2);
  EXPECT_EQ(exit_code("no_such --config " + write("x.json", json::object()) + out), 2);
  EXPECT_EQ(exit_code("shift_verify" + out), 2);
  const std::string big = write("big.json", {{"d", 2}, {"M", 128}});
  EXPECT_EQ(exit_code("fp_conservation1 --config " + big + out), 3);
  const std::string qubits = write("qubits.json", {{"n_x", 6}, {"n_p", 10}});
  EXPECT_EQ(exit_code("fp_fd_circuit --config " + qubits + out), 3);
  EXPECT_TRUE(fs::exists(dir / "out" / "shift_verify_shift.csv"));
}

}  // namespace
}  // namespace schrodsim::cli
