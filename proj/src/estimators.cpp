#include "crosstime/estimators.hpp"

#include <cmath>

#include "crosstime/fem_solver.hpp"

namespace crosstime {

std::string to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::taylor: return "taylor";
    case EstimateMethod::secant: return "secant";
    case EstimateMethod::inverse_quadratic: return "inverse_quadratic";
  }
  return "?";
}

std::string to_string(EstimateStatus s) {
  switch (s) {
    case EstimateStatus::converged: return "converged";
    case EstimateStatus::root_escape: return "root_escape";
    case EstimateStatus::degenerate_denominator: return "degenerate_denominator";
    case EstimateStatus::max_iterations: return "max_iterations";
  }
  return "?";
}

void attach_true_error(EstimateReport& report, double t_true) {
  report.e_q = t_true - report.t_c;
  if (*report.e_q != 0.0 && std::isfinite(report.eta))
    report.rho_eff = report.eta / *report.e_q;
  else
    report.rho_eff.reset();
}

EstimateReport taylor_estimate(const OdeProblem& problem, const PiecewiseSolution& forward,
                               const ThresholdSpec& spec, const CrossingResult& crossing,
                               const AdjointConfig& cfg) {
  EstimateReport rep;
  rep.method = EstimateMethod::taylor;
  rep.t_c = crossing.t_c;

  const double t_c = crossing.t_c;
  const Vector y_c = forward.eval(t_c);
  const Vector f_c = problem.rhs(y_c, t_c);
  const Matrix j_c = problem.jacobian(y_c, t_c);

  const Vector psi1 = -spec.v;
  const Vector psi2 = j_c.transpose() * spec.v;

  const AdjointSolution adj1 = solve_adjoint(problem, forward, psi1, t_c, cfg);
  const double e1 = error_functional(problem, forward, adj1, cfg.quad_points);
  const AdjointSolution adj2 = solve_adjoint(problem, forward, psi2, t_c, cfg);
  const double e2 = error_functional(problem, forward, adj2, cfg.quad_points);
  rep.n_adj = 2;

  const double vf = spec.v.dot(f_c);
  const double denom = vf + e2;
  if (std::abs(denom) < 1e-12 * (1.0 + std::abs(vf))) {
    rep.status = EstimateStatus::degenerate_denominator;
    rep.eta = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  rep.eta = e1 / denom;
  rep.status = EstimateStatus::converged;
  return rep;
}

namespace {

struct GValue {
  double g = 0.0;
  double e3 = 0.0;
};

GValue g_with_correction(const OdeProblem& problem, const PiecewiseSolution& forward,
                         const ThresholdSpec& spec, double t_eval, const AdjointConfig& cfg) {
  if (t_eval == problem.t0) {
    // empty adjoint interval: the solution error at t0 is zero
    return GValue{spec.v.dot(forward.eval(t_eval)) - spec.R, 0.0};
  }
  const AdjointSolution adj = solve_adjoint(problem, forward, spec.v, t_eval, cfg);
  const double e3 = error_functional(problem, forward, adj, cfg.quad_points);
  return GValue{spec.v.dot(forward.eval(t_eval)) + e3 - spec.R, e3};
}

// |g| stopping threshold: the correction term's own magnitude bounds the
// resolution of g, so full machine zero is not required.
double g_tolerance(double R, double e3) {
  return std::max(1e-12 * (1.0 + std::abs(R)), 1e-7 * std::abs(e3));
}

// Shared iteration driver: `next` maps the trailing iterates to the next
// point; history starts with the initial guesses.
EstimateReport iterate_root(const OdeProblem& problem, const PiecewiseSolution& forward,
                            const ThresholdSpec& spec, const CrossingResult& crossing,
                            const AdjointConfig& cfg, const IterativeOptions& opt,
                            EstimateMethod method, std::vector<double> x0s) {
  EstimateReport rep;
  rep.method = method;
  rep.t_c = crossing.t_c;
  rep.status = EstimateStatus::max_iterations;

  const double lo = problem.t0;
  const double hi = problem.T;
  std::vector<double>& xs = rep.iterates;
  std::vector<double> gs;
  xs = std::move(x0s);
  for (double x : xs) {
    gs.push_back(g_with_correction(problem, forward, spec, x, cfg).g);
    ++rep.n_adj;
  }

  const int n_history = static_cast<int>(xs.size());
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    double x_next = 0.0;
    const std::size_t n = xs.size();
    if (n_history == 2) {
      const double ga = gs[n - 2], gb = gs[n - 1];
      if (gb == ga) {
        rep.status = EstimateStatus::degenerate_denominator;
        return rep;
      }
      x_next = (xs[n - 2] * gb - xs[n - 1] * ga) / (gb - ga);
    } else {
      const double g0 = gs[n - 3], g1 = gs[n - 2], g2 = gs[n - 1];
      if (g0 == g1 || g0 == g2 || g1 == g2) {
        rep.status = EstimateStatus::degenerate_denominator;
        return rep;
      }
      x_next = xs[n - 3] * g1 * g2 / ((g0 - g1) * (g0 - g2)) +
               xs[n - 2] * g0 * g2 / ((g1 - g0) * (g1 - g2)) +
               xs[n - 1] * g0 * g1 / ((g2 - g0) * (g2 - g1));
    }

    if (!std::isfinite(x_next) || x_next < lo || x_next > hi) {
      xs.push_back(x_next);
      rep.status = EstimateStatus::root_escape;
      return rep;
    }

    const GValue gv = g_with_correction(problem, forward, spec, x_next, cfg);
    ++rep.n_adj;
    const double dx = std::abs(x_next - xs.back());
    xs.push_back(x_next);
    gs.push_back(gv.g);

    if (dx <= opt.tol_x || std::abs(gv.g) <= g_tolerance(spec.R, gv.e3)) {
      rep.status = EstimateStatus::converged;
      rep.eta = x_next - crossing.t_c;
      return rep;
    }
  }

  rep.eta = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

}  // namespace

double g_evaluate(const OdeProblem& problem, const PiecewiseSolution& forward,
                  const ThresholdSpec& spec, double t_eval, const AdjointConfig& cfg) {
  if (!(t_eval > problem.t0) || t_eval > problem.T)
    throw std::out_of_range("g_evaluate: t_eval must lie in (t0, T]");
  return g_with_correction(problem, forward, spec, t_eval, cfg).g;
}

EstimateReport secant_estimate(const OdeProblem& problem, const PiecewiseSolution& forward,
                               const ThresholdSpec& spec, const CrossingResult& crossing,
                               const AdjointConfig& cfg, const IterativeOptions& opt) {
  return iterate_root(problem, forward, spec, crossing, cfg, opt, EstimateMethod::secant,
                      {crossing.t_l, crossing.t_r});
}

EstimateReport inverse_quadratic_estimate(const OdeProblem& problem,
                                          const PiecewiseSolution& forward,
                                          const ThresholdSpec& spec,
                                          const CrossingResult& crossing,
                                          const AdjointConfig& cfg,
                                          const IterativeOptions& opt) {
  if (!crossing.t_ll)
    throw std::invalid_argument(
        "inverse_quadratic_estimate: crossing lies in the first element, no t_LL node");
  return iterate_root(problem, forward, spec, crossing, cfg, opt,
                      EstimateMethod::inverse_quadratic,
                      {*crossing.t_ll, crossing.t_l, crossing.t_r});
}

ConvergenceTable convergence_study(const std::string& problem_name, const ParamMap& params,
                                   const std::optional<ThresholdSpec>& spec_override, int q,
                                   const std::vector<int>& mesh_sizes,
                                   std::optional<EstimateMethod> estimator,
                                   const AdjointConfig& cfg) {
  if (mesh_sizes.size() < 2)
    throw std::invalid_argument("convergence_study: need at least 2 mesh sizes");

  auto [problem, default_spec] = builtin(problem_name, params);
  const ThresholdSpec spec = spec_override ? *spec_override : default_spec;

  double t_true;
  std::optional<PiecewiseSolution> ref;
  if (problem.analytic) {
    t_true = analytic_qoi(problem, spec);
  } else {
    t_true = reference_qoi(problem, spec, 1e-8);
    ref = reference_solution(problem);
  }
  auto true_state = [&](double t) {
    return problem.analytic ? (*problem.analytic)(t) : ref->eval(t);
  };

  ConvergenceTable table;
  for (int n : mesh_sizes) {
    const TimeMesh mesh = TimeMesh::uniform(problem.t0, problem.T, n);
    const PiecewiseSolution sol = solve_cg(problem, mesh, q);
    const CrossingResult crossing = detect_first_crossing(sol, spec);

    ConvergenceRow row;
    row.h = mesh.max_width();
    row.n_elements = n;
    row.t_c = crossing.t_c;
    row.e_q = t_true - crossing.t_c;
    row.solution_error = (true_state(crossing.t_c) - sol.eval(crossing.t_c)).norm();
    if (estimator) {
      EstimateReport rep;
      switch (*estimator) {
        case EstimateMethod::taylor:
          rep = taylor_estimate(problem, sol, spec, crossing, cfg);
          break;
        case EstimateMethod::secant:
          rep = secant_estimate(problem, sol, spec, crossing, cfg);
          break;
        case EstimateMethod::inverse_quadratic:
          rep = inverse_quadratic_estimate(problem, sol, spec, crossing, cfg);
          break;
      }
      if (rep.status == EstimateStatus::converged) row.eta = rep.eta;
    }
    table.rows.push_back(row);
  }

  auto fit_slope = [&](auto value_of) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& row : table.rows) {
      const double v = std::abs(value_of(row));
      if (v <= 0.0) continue;
      const double x = std::log(row.h), y = std::log(v);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  table.fitted_order_qoi = fit_slope([](const ConvergenceRow& r) { return r.e_q; });
  table.fitted_order_solution =
      fit_slope([](const ConvergenceRow& r) { return r.solution_error; });
  return table;
}

}  // namespace crosstime
