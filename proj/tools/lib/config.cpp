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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "experiments.hpp"

namespace schrodsim::cli {
namespace {

using Check = std::function<json(const json&, const std::string&)>;

struct Field {
  std::string name;
  json fallback;
  Check check;
};

Check real_in(double lo, double hi, bool open_lo = false) {
  return [=](const json& v, const std::string& key) -> json {
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x) || x > hi || x < lo || (open_lo && x == lo)) {
      std::ostringstream msg;
      msg << "value " << x << " outside " << (open_lo ? "(" : "[") << lo << ", " << hi << "]";
      throw ConfigError(key, msg.str());
    }
    return x;
  };
}

Check int_in(long long lo, long long hi) {
  return [=](const json& v, const std::string& key) -> json {
    if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
    const long long x = v.get<long long>();
    if (x < lo || x > hi) {
      throw ConfigError(key, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
    }
    return x;
  };
}

Check even_int_in(long long lo, long long hi) {
  const Check base = int_in(lo, hi);
  return [=](const json& v, const std::string& key) -> json {
    json out = base(v, key);
    if (out.get<long long>() % 2 != 0) throw ConfigError(key, "must be even");
    return out;
  };
}

Check one_of(std::vector<std::string> allowed) {
  return [=](const json& v, const std::string& key) -> json {
    if (!v.is_string()) throw ConfigError(key, "expected a string");
    for (const auto& a : allowed) {
      if (v.get<std::string>() == a) return v;
    }
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError(key, "'" + v.get<std::string>() + "' is not one of {" + list + "}");
  };
}

Check list_of(Check element, std::size_t min_len, bool monotone) {
  return [=](const json& v, const std::string& key) -> json {
    if (!v.is_array()) throw ConfigError(key, "expected an array");
    if (v.size() < min_len) throw ConfigError(key, "needs at least " + std::to_string(min_len) + " entries");
    json out = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(element(v[i], key + "[" + std::to_string(i) + "]"));
    }
    if (monotone && out.size() > 1) {
      const bool up = out[1].get<double>() > out[0].get<double>();
      for (std::size_t i = 1; i < out.size(); ++i) {
        const double a = out[i - 1].get<double>(), b = out[i].get<double>();
        if (up ? !(b > a) : !(b < a)) throw ConfigError(key, "entries must be strictly monotone");
      }
    }
    return out;
  };
}

Check potential_check() {
  return [](const json& v, const std::string& key) -> json {
    if (!v.is_object()) throw ConfigError(key, "expected an object");
    json out = {{"kind", "quadratic"}, {"strength", 1.0}, {"frequency", 1.0}};
    for (const auto& [k, val] : v.items()) {
      const std::string sub = key + "." + k;
      if (k == "kind") {
        out[k] = one_of({"quadratic", "cosine", "table"})(val, sub);
      } else if (k == "strength") {
        out[k] = real_in(-1e3, 1e3)(val, sub);
      } else if (k == "frequency") {
        out[k] = real_in(0.0, 64.0)(val, sub);
      } else if (k == "values") {
        out[k] = list_of(real_in(-1e3, 1e3), 1, false)(val, sub);
      } else {
        throw ConfigError(sub, "unknown key");
      }
    }
    if (out["kind"] == "table" && !out.contains("values")) {
      throw ConfigError(key + ".values", "required for a table potential");
    }
    if (out["kind"] != "table" && out.contains("values")) {
      throw ConfigError(key + ".values", "only allowed for a table potential");
    }
    return out;
  };
}

json dyadic_list(int from, int to) {
  json out = json::array();
  for (int k = from; k <= to; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::vector<Field> common_fields() {
  return {
      {"seed", 0, int_in(0, std::numeric_limits<int>::max())},
      {"out_dir", "", [](const json& v, const std::string& key) -> json {
         if (!v.is_string()) throw ConfigError(key, "expected a string");
         return v;
       }},
  };
}

std::vector<Field> domain_fields() {
  return {
      {"tail_tol", 1e-9, real_in(1e-300, 0.5, true)},
      {"L0", nullptr, [](const json& v, const std::string& key) -> json {
         // null selects ln(tail_tol).
         return v.is_null() ? v : real_in(-1e3, 0.0, true)(v, key);
       }},
  };
}

std::vector<Field> fp_fields() {
  return {
      {"d", 1, int_in(1, 2)},
      {"M", 16, even_int_in(2, 256)},
      {"sigma", 1.0, real_in(0.0, 1e3, true)},
      {"potential", json{{"kind", "quadratic"}}, potential_check()},
      {"initial", "perturbed", one_of({"perturbed", "steady"})},
      {"amplitude", 0.5, real_in(-0.99, 0.99)},
  };
}

std::vector<Field> schema(Experiment e) {
  std::vector<Field> f = common_fields();
  auto add = [&f](const std::vector<Field>& more) { f.insert(f.end(), more.begin(), more.end()); };
  switch (e) {
    case Experiment::ode_schrod:
      add({{"system", "random_stable", one_of({"random_stable", "random_unstable", "zero", "diagonal"})},
           {"n", 4, int_in(1, 64)},
           {"instances", 1, int_in(1, 100)},
           {"delta", 0.5, real_in(0.0, 10.0)},
           {"diagonal", json::array(), list_of(real_in(-100.0, 10.0), 0, false)},
           {"T", 1.0, real_in(0.0, 100.0)},
           {"dp_list", dyadic_list(5, 8), list_of(real_in(1e-6, 1.0, true), 1, true)},
           {"p_star_margin", 5, int_in(1, 1000)}});
      add(domain_fields());
      break;
    case Experiment::fp_conservation1:
    case Experiment::fp_conservation2:
      add(fp_fields());
      add({{"T", 0.5, real_in(0.0, 100.0)}, {"dp", 0.0625, real_in(1e-6, 1.0, true)}});
      add(domain_fields());
      break;
    case Experiment::fp_heat_split:
      add(fp_fields());
      add({{"T", 0.5, real_in(0.0, 100.0, true)},
           {"dt_list", json{0.05, 0.025, 0.0125, 0.00625}, list_of(real_in(1e-6, 10.0, true), 1, true)},
           {"reference_refinement", 16, int_in(2, 1024)},
           {"dp", 0.0625, real_in(1e-6, 1.0, true)},
           {"stage_order", "transport_then_phase", one_of({"transport_then_phase"})}});
      add(domain_fields());
      break;
    case Experiment::fp_fd_circuit:
      add({{"n_x", 4, int_in(1, 6)},
           {"n_p", 8, int_in(2, 12)},
           {"h", 1.0, real_in(0.0, 1e3, true)},
           {"T", 0.5, real_in(0.0, 100.0)},
           {"initial", "random", one_of({"random", "mode"})},
           {"k", 1, int_in(0, 63)}});
      add(domain_fields());
      break;
    case Experiment::eig_scan:
      add({{"potential", json{{"kind", "quadratic"}}, potential_check()},
           {"sigma", 1.0, real_in(0.0, 1e3, true)},
           {"d", 1, int_in(1, 2)},
           {"M_list", json{16, 32, 64, 128}, list_of(even_int_in(2, 256), 1, true)}});
      break;
    case Experiment::shift_verify:
      add({{"n_x_list", json{1, 2, 3, 4, 5, 6}, list_of(int_in(1, 10), 1, false)},
           {"h", 1.0, real_in(0.0, 1e3, true)}});
      break;
    case Experiment::splitting_verify:
      add({{"n", 3, int_in(1, 8)},
           {"instances", 10, int_in(1, 100)},
           {"dt", 0.1, real_in(0.0, 10.0, true)},
           {"steps", 10, int_in(1, 12)},
           {"dp", 0.015625, real_in(1e-6, 1.0, true)},
           {"stage_order", "transport_then_phase", one_of({"transport_then_phase"})}});
      add(domain_fields());
      break;
  }
  return f;
}

constexpr std::pair<Experiment, const char*> kNames[] = {
    {Experiment::ode_schrod, "ode_schrod"},
    {Experiment::fp_conservation1, "fp_conservation1"},
    {Experiment::fp_conservation2, "fp_conservation2"},
    {Experiment::fp_heat_split, "fp_heat_split"},
    {Experiment::fp_fd_circuit, "fp_fd_circuit"},
    {Experiment::eig_scan, "eig_scan"},
    {Experiment::shift_verify, "shift_verify"},
    {Experiment::splitting_verify, "splitting_verify"},
};

}  // namespace

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (const auto& [e, n] : kNames) {
    if (name == n) return e;
  }
  return std::nullopt;
}

const char* experiment_name(Experiment e) {
  for (const auto& [x, n] : kNames) {
    if (x == e) return n;
  }
  return "?";
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& [e, n] : kNames) out.emplace_back(n);
  return out;
}

ExperimentConfig load_config(Experiment experiment, const json& doc,
                             std::optional<std::uint64_t> seed_override) {
  if (!doc.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  const std::vector<Field> fields = schema(experiment);
  std::map<std::string, const Field*> by_name;
  for (const Field& f : fields) by_name[f.name] = &f;

  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.params = json::object();
  for (const auto& [key, value] : doc.items()) {
    if (key == "experiment") {
      if (!value.is_string() || value.get<std::string>() != experiment_name(experiment)) {
        throw ConfigError(key, "does not match the requested experiment '" +
                                   std::string(experiment_name(experiment)) + "'");
      }
      continue;
    }
    const auto it = by_name.find(key);
    if (it == by_name.end()) throw ConfigError(key, "unknown key");
    cfg.params[key] = it->second->check(value, key);
  }
  for (const Field& f : fields) {
    if (!cfg.params.contains(f.name)) cfg.params[f.name] = f.check(f.fallback, f.name);
  }
  if (seed_override) {
    if (*seed_override > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
      throw ConfigError("seed", "override out of range");
    }
    cfg.params["seed"] = *seed_override;
  }
  cfg.seed = cfg.params["seed"].get<std::uint64_t>();

  if (experiment == Experiment::ode_schrod && cfg.params["system"] == "diagonal") {
    if (cfg.params["diagonal"].empty()) throw ConfigError("diagonal", "required for system 'diagonal'");
    cfg.params["n"] = cfg.params["diagonal"].size();
  }
  // Grid and qubit caps are enforced by the library as ResourceError.
  if (cfg.params.contains("d") && cfg.params.contains("M")) {
    const json& pot = cfg.params["potential"];
    const long long M = cfg.params["M"].get<long long>();
    const long long rows = cfg.params["d"].get<int>() == 2 ? M * M : M;
    if (pot["kind"] == "table" && static_cast<long long>(pot["values"].size()) != rows) {
      throw ConfigError("potential.values", "length must be M^d");
    }
  }
  if (experiment == Experiment::fp_fd_circuit &&
      cfg.params["k"].get<int>() >= (1 << cfg.params["n_x"].get<int>())) {
    throw ConfigError("k", "mode index must be below 2^n_x");
  }
  if (experiment == Experiment::fp_heat_split) {
    const double T = cfg.params["T"];
    for (const json& dt : cfg.params["dt_list"]) {
      const double ratio = T / dt.get<double>();
      if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("dt_list", "every step must divide T into an integer number of steps");
      }
    }
  }
  if (experiment == Experiment::eig_scan) {
    for (std::size_t i = 1; i < cfg.params["M_list"].size(); ++i) {
      if (cfg.params["M_list"][i] <= cfg.params["M_list"][i - 1]) {
        throw ConfigError("M_list", "must be ascending");
      }
    }
  }
  cfg.digest = fnv1a_hex(cfg.params.dump());
  return cfg;
}

ExperimentConfig load_config_file(Experiment experiment, const std::filesystem::path& path,
                                  std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return load_config(experiment, doc, seed_override);
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string tool_version() { return SCHRODSIM_VERSION; }

}  // namespace schrodsim::cli
