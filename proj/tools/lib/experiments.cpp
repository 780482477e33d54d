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
#include <fstream>

#include "experiments.hpp"
#include "schrodsim/fokker_planck.hpp"
#include "schrodsim/instances.hpp"
#include "schrodsim/recovery.hpp"
#include "schrodsim/schrod_engine.hpp"
#include "schrodsim/shift_ops.hpp"
#include "schrodsim/splitting.hpp"

namespace schrodsim::cli {
namespace {

namespace fs = std::filesystem;

// Collects emitted files and the manifest for one run.
class Emitter {
 public:
  Emitter(const ExperimentConfig& cfg, fs::path dir) : cfg_(cfg), dir_(std::move(dir)) {
    fs::create_directories(dir_);
  }

  void csv(const std::string& stem, const CsvTable& table) {
    const fs::path path = dir_ / (std::string(experiment_name(cfg_.experiment)) + "_" + stem + ".csv");
    table.write(path, {"schrodsim " + tool_version(), std::string("experiment ") + experiment_name(cfg_.experiment),
                       "config_digest " + cfg_.digest});
    result_.files.push_back(path);
  }

  json& measured() { return result_.measured; }
  void note(const std::string& text) { notes_.push_back(text); }

  RunResult finish() {
    json files = json::array();
    for (const auto& f : result_.files) files.push_back(f.filename().string());
    const fs::path path = dir_ / (std::string(experiment_name(cfg_.experiment)) + "_manifest.json");
    const json manifest = {{"tool_version", tool_version()},
                           {"experiment", experiment_name(cfg_.experiment)},
                           {"config_digest", cfg_.digest},
                           {"params", cfg_.params},
                           {"measured", result_.measured},
                           {"notes", notes_},
                           {"files", files}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << manifest.dump(2) << '\n';
    result_.files.push_back(path);
    return result_;
  }

 private:
  const ExperimentConfig& cfg_;
  fs::path dir_;
  RunResult result_;
  std::vector<std::string> notes_;
};

template <class T>
std::vector<T> as_vector(const json& v) {
  return v.get<std::vector<T>>();
}

Potential potential_from(const json& spec) {
  const std::string kind = spec["kind"];
  if (kind == "cosine") return Potential::cosine(spec["strength"], spec["frequency"]);
  if (kind == "table") {
    const auto values = as_vector<double>(spec["values"]);
    return Potential::table(Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
  return Potential::quadratic(spec["strength"]);
}

std::optional<double> left_cutoff(const json& p) {
  if (p["L0"].is_null()) return std::nullopt;
  return p["L0"].get<double>();
}

double rel_error(const Vector& got, const Vector& want) {
  const double scale = want.norm();
  return scale > 0.0 ? (got - want).norm() / scale : (got - want).norm();
}

// Order of a refinement table, or null when the data cannot support a fit.
json fit_order(const std::vector<double>& steps, const std::vector<double>& errors, CsvTable* table) {
  if (steps.size() < 3) return nullptr;
  for (double e : errors) {
    if (!(e > 0.0)) return nullptr;
  }
  const ConvergenceReport r = convergence_report(steps, errors);
  if (table) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
      table->add_row({steps[i], errors[i], i == 0 ? r.order : r.local_orders[i - 1]});
    }
  }
  return json{{"order", r.order}, {"log_constant", r.log_constant}, {"local_orders", r.local_orders}};
}

HermitianSplit make_system(const json& p, Rng& rng) {
  const std::string kind = p["system"];
  const auto n = p["n"].get<Eigen::Index>();
  if (kind == "random_stable") return random_stable_split(n, rng);
  if (kind == "random_unstable") return random_unstable_split(n, p["delta"], rng);
  if (kind == "zero") return HermitianSplit::from_parts(Matrix::Zero(n, n), Matrix::Zero(n, n));
  const auto d = as_vector<double>(p["diagonal"]);
  Matrix h1 = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) h1(i, i) = d[static_cast<std::size_t>(i)];
  return HermitianSplit::from_parts(h1, Matrix::Zero(n, n));
}

void run_ode_schrod(const ExperimentConfig& cfg, Emitter& out) {
  const json& p = cfg.params;
  Rng rng(cfg.seed);
  const double T = p["T"];
  const auto dps = as_vector<double>(p["dp_list"]);
  const int instances = p["instances"];
  const int margin = p["p_star_margin"];

  CsvTable rows({"instance", "dp", "Np", "p_star", "lambda_plus", "rel_error", "probability",
                 "lemma_value", "g0", "g_plus", "g_c", "norm_drift"});
  std::vector<double> sum_err(dps.size(), 0.0);
  double worst_ratio = 0.0, worst_prob = 0.0, worst_gap = 0.0;
  for (int i = 0; i < instances; ++i) {
    const HermitianSplit split = make_system(p, rng);
    Vector u0 = random_complex_vector(split.n(), rng);
    u0 /= u0.norm();
    const SpectralData eig = spectral_data(split);
    const Vector uT = reference_evolve(split.A, u0, T);
    const PDomain dom = choose_domain(eig.lambda_min, eig.lambda_plus, T, left_cutoff(p), p["tail_tol"]);
    const ComplexityFactors g = complexity_factors(u0, uT, eig.lambda_plus, eig.lambda_plus, T);
    worst_gap = std::max(worst_gap, std::abs(g.g_c - g.g_plus));
    for (std::size_t k = 0; k < dps.size(); ++k) {
      const PGrid grid = PGrid::with_spacing(dom.L, dom.R, dps[k]);
      const SchrodState s0 = warp_initial(u0, grid);
      const SchrodState sT = evolve(split, grid, s0, T);
      const double p_star = default_p_star(grid, eig.lambda_plus, T, margin);
      const double err = rel_error(restore_pointwise(sT, grid, eig.lambda_plus, p_star), uT);
      const double thr = restore_threshold(eig.lambda_plus, T);
      const double prob = projection_probability(sT, grid, thr);
      const double lemma = 0.5 * std::exp(-2.0 * thr) * uT.squaredNorm() / u0.squaredNorm();
      const double drift = std::abs(sT.norm() - s0.norm()) / s0.norm();
      rows.add_row({double(i), dps[k], double(grid.Np()), p_star, eig.lambda_plus, err, prob, lemma,
                    g.g0, g.g_plus, g.g_c, drift});
      sum_err[k] += err;
      worst_ratio = std::max(worst_ratio, err / dps[k]);
      worst_prob = std::max(worst_prob, std::abs(prob - lemma) / dps[k]);
    }
  }
  out.csv("errors", rows);

  std::vector<double> mean_err;
  for (double s : sum_err) mean_err.push_back(s / instances);
  CsvTable conv({"dp", "mean_rel_error", "order"});
  json order = fit_order(dps, mean_err, &conv);
  if (!order.is_null()) out.csv("convergence", conv);
  out.measured() = {{"mean_rel_error", mean_err},
                    {"max_error_over_dp", worst_ratio},
                    {"max_probability_gap_over_dp", worst_prob},
                    {"max_gc_minus_gplus", worst_gap},
                    {"convergence", order}};
}

struct FpSetup {
  XGrid grid;
  FokkerPlanckProblem prob;
  Vector f0;
};

FpSetup fp_setup(const json& p, FpForm form) {
  FpSetup s;
  s.grid = XGrid(p["d"], p["M"], -1.0, 1.0);
  s.prob = make_problem(s.grid, p["sigma"], potential_from(p["potential"]), form);
  const double sigma = p["sigma"];
  s.f0 = (-s.prob.V / sigma).array().exp().cast<cplx>();
  if (p["initial"] == "perturbed") {
    const double amp = p["amplitude"];
    for (Eigen::Index j = 0; j < s.f0.size(); ++j) {
      const double x1 = s.grid.coordinate(s.grid.unflatten(j)[0]);
      s.f0(j) *= 1.0 + amp * std::sin(kPi * x1);
    }
  }
  return s;
}

void profile_table(Emitter& out, const XGrid& grid, const Vector& got, const Vector& want) {
  std::vector<std::string> header;
  for (int l = 0; l < grid.d; ++l) header.push_back("x" + std::to_string(l + 1));
  for (const char* c : {"f_re", "f_im", "reference_re", "reference_im"}) header.emplace_back(c);
  CsvTable t(header);
  for (Eigen::Index j = 0; j < got.size(); ++j) {
    std::vector<double> row;
    for (int idx : grid.unflatten(j)) row.push_back(grid.coordinate(idx));
    row.insert(row.end(), {got(j).real(), got(j).imag(), want(j).real(), want(j).imag()});
    t.add_row(row);
  }
  out.csv("profile", t);
}

void run_fp_conservation(const ExperimentConfig& cfg, Emitter& out, FpForm form) {
  const json& p = cfg.params;
  const double sigma = p["sigma"], T = p["T"];
  FpSetup s = fp_setup(p, form);
  for (const auto& w : s.prob.warnings) out.note(w);

  // Form I evolves f with A; form II evolves g = e^{V/2 sigma} f with H.
  Matrix A;
  Vector y0;
  double steady_residual;
  if (form == FpForm::conservation_I) {
    A = assemble_conservation_A(s.prob);
    y0 = s.f0;
    steady_residual = (A * steady_state(s.prob.V, sigma).cast<cplx>()).norm();
  } else {
    A = assemble_symmetric_H(s.prob);
    y0 = transform_to_heat(s.f0, s.prob.V, sigma);
    steady_residual = (A * (-s.prob.V / (2.0 * sigma)).array().exp().matrix().cast<cplx>()).norm();
  }
  const HermitianSplit split = hermitian_split(A);
  const SpectralData eig = spectral_data(split);
  const Vector yT = reference_evolve(A, y0, T);
  const PDomain dom = choose_domain(eig.lambda_min, eig.lambda_plus, T, left_cutoff(p), p["tail_tol"]);
  const PGrid grid = PGrid::with_spacing(dom.L, dom.R, p["dp"]);
  const SchrodState s0 = warp_initial(y0, grid);
  const SchrodState sT = evolve(split, grid, s0, T);
  const double p_star = default_p_star(grid, eig.lambda_plus, T);
  const Vector y = restore_pointwise(sT, grid, eig.lambda_plus, p_star);

  Vector f = y, fT = yT;
  if (form == FpForm::conservation_II) {
    f = transform_from_heat(y, s.prob.V, sigma);
    fT = transform_from_heat(yT, s.prob.V, sigma);
  }
  const double vol = s.grid.cell_volume();
  const double mass0 = s.f0.sum().real() * vol, mass = f.sum().real() * vol;
  const double err = rel_error(y, yT);
  const double drift = std::abs(sT.norm() - s0.norm()) / s0.norm();

  CsvTable t({"M", "d", "sigma", "lambda_plus", "lambda_max", "dp", "p_star", "rel_error",
              "steady_residual", "mass_initial", "mass_final", "norm_drift"});
  t.add_row({double(s.grid.M), double(s.grid.d), sigma, eig.lambda_plus, eig.lambda_max, grid.dp(), p_star,
             err, steady_residual, mass0, mass, drift});
  out.csv("summary", t);
  profile_table(out, s.grid, f, fT);
  out.measured() = {{"lambda_plus", eig.lambda_plus}, {"lambda_max", eig.lambda_max},
                    {"rel_error", err},              {"steady_residual", steady_residual},
                    {"mass_initial", mass0},         {"mass_final", mass},
                    {"norm_drift", drift}};
}

void run_fp_heat_split(const ExperimentConfig& cfg, Emitter& out) {
  const json& p = cfg.params;
  const double sigma = p["sigma"], T = p["T"];
  FpSetup s = fp_setup(p, FpForm::heat);
  for (const auto& w : s.prob.warnings) out.note(w);
  const RealVector U = heat_form_potential(s.prob);
  const Vector psi0 = transform_to_heat(s.f0, s.prob.V, sigma);

  // Weyl bound on the lowest generator eigenvalue keeps the domain free of a dense eigensolve.
  const double mu_max = kPi * s.grid.M / (s.grid.b - s.grid.a);
  const double lambda_low = -(sigma * s.grid.d * mu_max * mu_max + std::max(0.0, U.maxCoeff()));
  const PDomain dom = choose_domain(lambda_low, 0.0, T, left_cutoff(p), p["tail_tol"]);
  const PGrid grid = PGrid::with_spacing(dom.L, dom.R, p["dp"]);
  const double p_star = default_p_star(grid, 0.0, T);
  const SchrodState start = heat_initial_state(psi0, s.grid, grid);

  struct Result {
    SplitSchedule sched;
    Vector psi;
    double drift;
  };
  auto solve = [&](double dt_hint) {
    const SplitSchedule sched = SplitSchedule::for_interval(T, dt_hint);
    const HeatSplitPropagator prop(s.grid, U, sigma, grid, sched.dt);
    SchrodState st = start;
    double drift = 0.0;
    for (int m = 0; m < sched.steps; ++m) {
      const double before = st.norm();
      st = prop.step(st);
      drift = std::max(drift, std::abs(st.norm() - before) / before);
    }
    const SchrodState phys = heat_to_physical(st, s.grid);
    return Result{sched, restore_pointwise(phys, grid, 0.0, p_star), drift};
  };

  auto dts = as_vector<double>(p["dt_list"]);
  std::sort(dts.begin(), dts.end(), std::greater<>());
  const Result ref = solve(dts.back() / p["reference_refinement"].get<int>());
  const Vector exact = reference_evolve(heat_generator(s.prob), psi0, T);

  CsvTable t({"dt", "steps", "error_vs_reference", "error_vs_exact", "max_step_norm_drift"});
  std::vector<double> used, errs;
  double worst_drift = ref.drift;
  for (double dt : dts) {
    const Result r = solve(dt);
    const double e = rel_error(r.psi, ref.psi);
    t.add_row({r.sched.dt, double(r.sched.steps), e, rel_error(r.psi, exact), r.drift});
    used.push_back(r.sched.dt);
    errs.push_back(e);
    worst_drift = std::max(worst_drift, r.drift);
  }
  out.csv("errors", t);
  CsvTable conv({"dt", "error_vs_reference", "order"});
  json order = fit_order(used, errs, &conv);
  if (!order.is_null()) out.csv("convergence", conv);
  out.measured() = {{"reference_dt", ref.sched.dt},
                    {"reference_error_vs_exact", rel_error(ref.psi, exact)},
                    {"max_step_norm_drift", worst_drift},
                    {"convergence", order}};
}

void run_fp_fd_circuit(const ExperimentConfig& cfg, Emitter& out) {
  const json& p = cfg.params;
  const int n_x = p["n_x"], n_p = p["n_p"];
  const double h = p["h"], T = p["T"];
  const int M = 1 << n_x;
  Rng rng(cfg.seed);
  Vector psi0(M);
  if (p["initial"] == "mode") {
    const int k = p["k"];
    for (int j = 0; j < M; ++j) psi0(j) = std::polar(1.0, 2.0 * kPi * k * j / M);
  } else {
    psi0 = random_complex_vector(M, rng);
  }
  const PDomain dom = choose_domain(-4.0 / (h * h), 0.0, T, left_cutoff(p), p["tail_tol"]);
  const PGrid grid(dom.L, dom.R, 1 << n_p);
  const SchrodState sT = fd_heat_schrodingerized_evolve(n_x, n_p, h, grid, psi0, T);
  const double p_star = default_p_star(grid, 0.0, T);
  const Vector u = restore_pointwise(sT, grid, 0.0, p_star);

  const Matrix lap = build_fd_laplacian(M, h, BoundaryCondition::periodic).cast<cplx>();
  const Vector exact = reference_evolve(lap, psi0, T);
  const SchrodState classical =
      evolve(HermitianSplit::from_parts(lap, Matrix::Zero(M, M)), grid, warp_initial(psi0, grid), T);
  const double circuit_gap = max_abs(sT.data - classical.data);
  const double drift = std::abs(sT.norm() - classical.norm()) / classical.norm();
  const double err = rel_error(u, exact);

  CsvTable t({"n_x", "n_p", "dp", "p_star", "error_vs_exact", "circuit_vs_classical", "norm_drift"});
  t.add_row({double(n_x), double(n_p), grid.dp(), p_star, err, circuit_gap, drift});
  out.csv("summary", t);
  out.measured() = {{"error_vs_exact", err}, {"circuit_vs_classical", circuit_gap}, {"norm_drift", drift}};
}

void run_eig_scan(const ExperimentConfig& cfg, Emitter& out) {
  const json& p = cfg.params;
  const auto Ms = as_vector<int>(p["M_list"]);
  const auto scan = positive_eig_scan(potential_from(p["potential"]), p["sigma"], Ms, p["d"]);
  CsvTable t({"M", "lambda_plus"});
  json lp = json::array();
  for (const auto& [M, lambda] : scan) {
    t.add_row({double(M), lambda});
    lp.push_back(lambda);
  }
  out.csv("lambda_plus", t);
  out.note("diffusion coefficient and domain are assumptions: sigma = " + p["sigma"].dump() +
           " on (-1, 1)^d; the reference trend was reported without stating either");
  out.measured() = {{"lambda_plus", lp}};
  if (scan.size() >= 2) {
    out.measured()["last_difference"] = std::abs(scan.back().second - scan[scan.size() - 2].second);
  }
}

void run_shift_verify(const ExperimentConfig& cfg, Emitter& out) {
  const json& p = cfg.params;
  const double h = p["h"];
  CsvTable shift({"n_x", "max_error"});
  CsvTable fd({"M", "max_eigenvalue_error"});
  double worst_shift = 0.0, worst_fd = 0.0;
  for (int n_x : as_vector<int>(p["n_x_list"])) {
    const double e = verify_shift_diagonalization(n_x);
    shift.add_row({double(n_x), e});
    worst_shift = std::max(worst_shift, e);

    const int M = 1 << n_x;
    RealVector got = hermitian_eigen(build_fd_laplacian(M, h, BoundaryCondition::periodic).cast<cplx>())
                         .eigenvalues;
    RealVector want = periodic_laplacian_eigenvalues(M, h);
    std::sort(want.data(), want.data() + want.size());
    const double fe = (got - want).cwiseAbs().maxCoeff();
    fd.add_row({double(M), fe});
    worst_fd = std::max(worst_fd, fe);
  }
  out.csv("shift", shift);
  out.csv("fd_eigenvalues", fd);
  out.measured() = {{"max_shift_error", worst_shift}, {"max_fd_eigenvalue_error", worst_fd}};
}

void run_splitting_verify(const ExperimentConfig& cfg, Emitter& out) {
  const json& p = cfg.params;
  Rng rng(cfg.seed);
  const double dt = p["dt"];
  const int steps = p["steps"];
  CsvTable t({"instance", "max_deviation", "probability", "lemma_value", "grid_probability",
              "grid_norm_drift"});
  double worst = 0.0, worst_prob = 0.0;
  for (int i = 0; i < p["instances"].get<int>(); ++i) {
    const HermitianSplit split = random_stable_split(p["n"].get<Eigen::Index>(), rng);
    Vector u0 = random_complex_vector(split.n(), rng);
    u0 /= u0.norm();
    const double dev = verify_splitting_exactness(split, u0, dt, steps);
    const SplittingProbability sp = splitting_probability(split, u0, dt, steps);
    const SpectralData eig = spectral_data(split);
    const PDomain dom = choose_domain(eig.lambda_min, 0.0, dt * steps, left_cutoff(p), p["tail_tol"]);
    const PGrid grid = PGrid::with_spacing(dom.L, dom.R, p["dp"]);
    const SplittingProbability gp = splitting_probability_grid(split, u0, dt, steps, grid);

    const GridSplitter stepper(split, grid, dt);
    SchrodState st = warp_initial(u0, grid);
    double drift = 0.0;
    for (int m = 0; m < steps; ++m) {
      const double before = st.norm();
      st = stepper.step(st);
      drift = std::max(drift, std::abs(st.norm() - before) / before);
    }
    t.add_row({double(i), dev, sp.probability, sp.lemma_value, gp.probability, drift});
    worst = std::max(worst, dev);
    worst_prob = std::max(worst_prob, std::abs(gp.probability - gp.lemma_value));
  }
  out.csv("exactness", t);
  out.measured() = {{"max_deviation", worst}, {"max_grid_probability_gap", worst_prob}};
}

}  // namespace

RunResult run(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  Emitter out(config, out_dir);
  switch (config.experiment) {
    case Experiment::ode_schrod: run_ode_schrod(config, out); break;
    case Experiment::fp_conservation1: run_fp_conservation(config, out, FpForm::conservation_I); break;
    case Experiment::fp_conservation2: run_fp_conservation(config, out, FpForm::conservation_II); break;
    case Experiment::fp_heat_split: run_fp_heat_split(config, out); break;
    case Experiment::fp_fd_circuit: run_fp_fd_circuit(config, out); break;
    case Experiment::eig_scan: run_eig_scan(config, out); break;
    case Experiment::shift_verify: run_shift_verify(config, out); break;
    case Experiment::splitting_verify: run_splitting_verify(config, out); break;
  }
  return out.finish();
}

}  // namespace schrodsim::cli
