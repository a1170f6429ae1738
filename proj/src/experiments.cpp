#include "crosstime/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <thread>

#include "crosstime/csv.hpp"
#include "crosstime/fem_solver.hpp"

namespace crosstime {

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string metadata_line(const ExperimentConfig& cfg) {
  const std::uint64_t seed = cfg.uq ? cfg.uq->seed : 0;
  return "config_hash=" + hash_hex(cfg.config_hash) + " seed=" + std::to_string(seed) +
         " generator=" + CounterRng::name();
}

PiecewiseSolution solve_forward(const ExperimentConfig& cfg, const OdeProblem& problem) {
  const TimeMesh mesh = TimeMesh::uniform(problem.t0, problem.T, cfg.n_elements);
  if (cfg.scheme == SchemeKind::crank_nicolson) return solve_crank_nicolson(problem, mesh);
  return solve_cg(problem, mesh, cfg.q, cfg.quad_points);
}

std::optional<double> true_qoi(const OdeProblem& problem, const ThresholdSpec& spec) {
  try {
    if (problem.analytic) return analytic_qoi(problem, spec);
    return reference_qoi(problem, spec, 1e-8);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

EstimateReport run_one(EstimateMethod method, const OdeProblem& problem,
                       const PiecewiseSolution& sol, const ThresholdSpec& spec,
                       const CrossingResult& crossing, const AdjointConfig& adj) {
  switch (method) {
    case EstimateMethod::taylor: return taylor_estimate(problem, sol, spec, crossing, adj);
    case EstimateMethod::secant: return secant_estimate(problem, sol, spec, crossing, adj);
    case EstimateMethod::inverse_quadratic:
      return inverse_quadratic_estimate(problem, sol, spec, crossing, adj);
  }
  throw std::logic_error("run_one: bad method");
}

void write_solution_samples(const ExperimentConfig& cfg, const PiecewiseSolution& sol,
                            const std::string& out_dir) {
  if (cfg.solution_samples <= 0 || out_dir.empty()) return;
  CsvWriter csv(out_dir + "/" + cfg.output_stem + "_solution.csv");
  csv.comment(metadata_line(cfg));
  std::vector<std::string> header{"t"};
  for (int i = 0; i < sol.dim(); ++i) header.push_back("y" + std::to_string(i + 1));
  csv.row(header);
  const double t0 = sol.mesh().t0(), t1 = sol.mesh().t1();
  for (int i = 0; i <= cfg.solution_samples; ++i) {
    const double t = t0 + (t1 - t0) * i / cfg.solution_samples;
    std::vector<std::string> cells{fmt_sci(t)};
    const Vector y = sol.eval(t);
    for (int k = 0; k < y.size(); ++k) cells.push_back(fmt_sci(y(k)));
    csv.row(cells);
  }
}

std::string opt_cell(const std::optional<double>& x) { return x ? fmt_sci(*x) : ""; }

}  // namespace

EstimateRun run_estimate(const ExperimentConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  auto [problem, spec] = builtin(cfg.problem_name, cfg.params);

  EstimateRun run;
  std::optional<PiecewiseSolution> sol;
  std::optional<CrossingResult> crossing;
  std::string pipeline_error;
  try {
    sol = solve_forward(cfg, problem);
    crossing = detect_first_crossing(*sol, spec);
    run.t_true = true_qoi(problem, spec);
  } catch (const std::exception& e) {
    pipeline_error = e.what();
  }

  for (EstimateMethod method : cfg.estimators) {
    EstimateRow row;
    row.method = method;
    if (!crossing) {
      row.error = pipeline_error;
      run.rows.push_back(row);
      continue;
    }
    row.t_l = crossing->t_l;
    row.t_r = crossing->t_r;
    row.t_ll = crossing->t_ll;
    try {
      EstimateReport rep = run_one(method, problem, *sol, spec, *crossing, cfg.adjoint);
      if (run.t_true) attach_true_error(rep, *run.t_true);
      row.report = rep;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    run.rows.push_back(row);
  }

  if (!out_dir.empty()) {
    CsvWriter csv(out_dir + "/" + cfg.output_stem + "_estimate.csv");
    csv.comment(metadata_line(cfg));
    csv.row({"method", "t_c", "t_LL", "t_L", "t_R", "e_Q", "eta", "rho_eff", "n_adj", "status"});
    for (const auto& row : run.rows) {
      if (!row.report) {
        csv.row({to_string(row.method), "", "", "", "", "", "", "", "",
                 row.error.empty() ? "error" : "error: " + row.error});
        continue;
      }
      const EstimateReport& r = *row.report;
      const bool show_brackets = row.method != EstimateMethod::taylor;
      csv.row({to_string(r.method), fmt_sci(r.t_c),
               show_brackets && row.method == EstimateMethod::inverse_quadratic
                   ? opt_cell(row.t_ll)
                   : "",
               show_brackets ? opt_cell(row.t_l) : "",
               show_brackets ? opt_cell(row.t_r) : "", opt_cell(r.e_q),
               std::isfinite(r.eta) ? fmt_sci(r.eta) : "", opt_cell(r.rho_eff),
               std::to_string(r.n_adj), to_string(r.status)});
    }
    if (sol) write_solution_samples(cfg, *sol, out_dir);
  }
  return run;
}

SweepRun run_sweep_r(const ExperimentConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  if (cfg.sweep_r.empty()) throw ConfigError("sweep-r: config has no sweep.R list");

  auto [problem, base_spec] = builtin(cfg.problem_name, cfg.params);
  const PiecewiseSolution sol = solve_forward(cfg, problem);

  SweepRun run;
  run.r_values = cfg.sweep_r;
  const int n_r = static_cast<int>(cfg.sweep_r.size());
  run.cells.resize(cfg.estimators.size() * n_r);

  std::vector<std::thread> pool;
  const int jobs = std::max(1, std::min<int>(cfg.jobs, n_r));
  auto work = [&](int start) {
    for (int ir = start; ir < n_r; ir += jobs) {
      const double r_value = cfg.sweep_r[ir];
      const ThresholdSpec spec(base_spec.v, r_value);
      std::optional<CrossingResult> crossing;
      std::optional<double> t_true;
      try {
        crossing = detect_first_crossing(sol, spec);
        t_true = true_qoi(problem, spec);
      } catch (const std::exception&) {
      }
      for (std::size_t im = 0; im < cfg.estimators.size(); ++im) {
        SweepCell& cell = run.cells[im * n_r + ir];
        cell.R = r_value;
        cell.method = cfg.estimators[im];
        cell.text = "fail";
        if (!crossing) continue;
        try {
          EstimateReport rep =
              run_one(cfg.estimators[im], problem, sol, spec, *crossing, cfg.adjoint);
          if (rep.status != EstimateStatus::converged) continue;
          if (t_true) {
            attach_true_error(rep, *t_true);
            if (rep.rho_eff) {
              cell.rho = rep.rho_eff;
              cell.text = fmt_sci(*rep.rho_eff);
            }
          }
        } catch (const std::exception&) {
        }
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  if (!out_dir.empty()) {
    CsvWriter csv(out_dir + "/" + cfg.output_stem + "_sweep.csv");
    csv.comment(metadata_line(cfg));
    std::vector<std::string> header{"method"};
    for (double r : run.r_values) header.push_back("R=" + fmt_sci(r));
    csv.row(header);
    for (std::size_t im = 0; im < cfg.estimators.size(); ++im) {
      std::vector<std::string> cells{to_string(cfg.estimators[im])};
      for (int ir = 0; ir < n_r; ++ir) cells.push_back(run.cells[im * n_r + ir].text);
      csv.row(cells);
    }
  }
  return run;
}

ConvergenceTable run_converge(const ExperimentConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  if (cfg.converge_meshes.size() < 2)
    throw ConfigError("converge: need at least 2 entries in converge.meshes");
  if (cfg.scheme != SchemeKind::cg) throw ConfigError("converge: requires scheme.kind = cg");

  std::optional<ThresholdSpec> spec_override;
  if (cfg.params.count("R")) {
    auto [unused, spec] = builtin(cfg.problem_name, cfg.params);
    (void)unused;
    spec_override = spec;
  }
  std::optional<EstimateMethod> estimator;
  if (cfg.estimators.size() == 1) estimator = cfg.estimators.front();

  ConvergenceTable table = convergence_study(cfg.problem_name, cfg.params, spec_override, cfg.q,
                                             cfg.converge_meshes, estimator, cfg.adjoint);

  if (!out_dir.empty()) {
    CsvWriter csv(out_dir + "/" + cfg.output_stem + "_converge.csv");
    csv.comment(metadata_line(cfg));
    csv.row({"h", "n_elements", "t_c", "e_Q", "abs_e_Q", "solution_error", "eta"});
    for (const auto& row : table.rows) {
      csv.row({fmt_sci(row.h), std::to_string(row.n_elements), fmt_sci(row.t_c),
               fmt_sci(row.e_q), fmt_sci(std::abs(row.e_q)), fmt_sci(row.solution_error),
               row.eta ? fmt_sci(*row.eta) : ""});
    }
    csv.comment("fitted_order_qoi=" + fmt_sci(table.fitted_order_qoi) +
                " fitted_order_solution=" + fmt_sci(table.fitted_order_solution));
  }
  return table;
}

CdfRun run_cdf(const ExperimentConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  if (!cfg.uq) throw ConfigError("cdf: config has no uq block");
  if (cfg.uq->dists.empty()) throw ConfigError("cdf: uq block has no distributions");
  if (cfg.scheme != SchemeKind::cg) throw ConfigError("cdf: requires scheme.kind = cg");

  auto [problem, spec] = builtin(cfg.problem_name, cfg.params);
  (void)problem;

  UqRunConfig run_cfg;
  run_cfg.n_elements = cfg.n_elements;
  run_cfg.q = cfg.q;
  run_cfg.adjoint = cfg.adjoint;
  run_cfg.estimator = cfg.estimators.front();
  run_cfg.jobs = cfg.jobs;

  CdfRun run{draw_samples(cfg.problem_name, cfg.uq->dists, spec, cfg.uq->n, cfg.uq->seed,
                          run_cfg),
             {}, {}, {}, {}};
  run.t_grid = default_t_grid(run.set, cfg.uq->t_grid_points);
  run.curve = cdf_error_bound(run.set, cfg.uq->epsilon, run.t_grid);

  const StepCdf nominal = nominal_cdf(cfg.problem_name, cfg.uq->dists, spec, cfg.uq->n_nom,
                                      cfg.uq->seed, cfg.uq->nominal_tol);
  run.f_nominal.reserve(run.t_grid.size());
  run.true_err.reserve(run.t_grid.size());
  for (std::size_t i = 0; i < run.t_grid.size(); ++i) {
    run.f_nominal.push_back(nominal(run.t_grid[i]));
    run.true_err.push_back(std::abs(run.f_nominal[i] - run.curve.f_hat[i]));
  }

  if (!out_dir.empty()) {
    {
      CsvWriter csv(out_dir + "/" + cfg.output_stem + "_samples.csv");
      csv.comment(metadata_line(cfg));
      std::vector<std::string> header{"n"};
      for (const auto& target : run.set.targets) header.push_back("theta_" + target);
      header.insert(header.end(), {"q_hat", "eta", "status"});
      csv.row(header);
      for (std::size_t n = 0; n < run.set.samples.size(); ++n) {
        const QoiSample& s = run.set.samples[n];
        std::vector<std::string> cells{std::to_string(n)};
        for (double th : s.theta) cells.push_back(fmt_sci(th));
        const bool ok = s.status == SampleStatus::ok;
        cells.push_back(ok ? fmt_sci(s.q_hat) : "");
        cells.push_back(ok ? fmt_sci(s.eta) : "");
        cells.push_back(to_string(s.status));
        csv.row(cells);
      }
    }
    {
      CsvWriter csv(out_dir + "/" + cfg.output_stem + "_bound.csv");
      csv.comment(metadata_line(cfg));
      csv.row({"t", "f_hat", "f_nominal", "true_err", "sampling_term", "discretization_term",
               "remainder_term", "total_bound"});
      for (std::size_t i = 0; i < run.t_grid.size(); ++i) {
        csv.row({fmt_sci(run.t_grid[i]), fmt_sci(run.curve.f_hat[i]),
                 fmt_sci(run.f_nominal[i]), fmt_sci(run.true_err[i]),
                 fmt_sci(run.curve.sampling_term[i]), fmt_sci(run.curve.discretization_term[i]),
                 fmt_sci(run.curve.remainder_term[i]), fmt_sci(run.curve.total_bound[i])});
      }
    }
  }
  return run;
}

}  // namespace crosstime
