#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crosstime/adjoint.hpp"
#include "crosstime/crossing.hpp"

namespace crosstime {

enum class EstimateMethod { taylor, secant, inverse_quadratic };
enum class EstimateStatus { converged, root_escape, degenerate_denominator, max_iterations };

std::string to_string(EstimateMethod m);
std::string to_string(EstimateStatus s);

/// Outcome of one error-estimation run. eta approximates the crossing-time
/// error t_t - t_c; e_q and rho_eff are filled in when a reference value is
/// attached. n_adj counts adjoint solves (for the iterative methods, one per
/// g-evaluation including the initial guesses).
struct EstimateReport {
  EstimateMethod method = EstimateMethod::taylor;
  double t_c = 0.0;
  double eta = 0.0;
  std::optional<double> e_q;
  std::optional<double> rho_eff;
  int n_adj = 0;
  std::vector<double> iterates;
  EstimateStatus status = EstimateStatus::converged;
};

/// Sets e_q = t_true - t_c and rho_eff = eta / e_q (when e_q != 0).
void attach_true_error(EstimateReport& report, double t_true);

/// Crossing-time error estimate from two adjoint solves at t_hat = t_c:
/// eta = E1 / (v . f(Y(t_c), t_c) + E2), with terminal data psi1 = -v and
/// psi2 = grad_f(Y(t_c), t_c)^T v. Reports degenerate_denominator when the
/// denominator vanishes (threshold at a stationary point of S).
EstimateReport taylor_estimate(const OdeProblem& problem, const PiecewiseSolution& forward,
                               const ThresholdSpec& spec, const CrossingResult& crossing,
                               const AdjointConfig& cfg);

/// Error-corrected functional g(t) = v . Y(t) + E3(t) - R, one adjoint solve
/// with psi3 = v at t_hat = t. Throws std::out_of_range outside (t0, T].
double g_evaluate(const OdeProblem& problem, const PiecewiseSolution& forward,
                  const ThresholdSpec& spec, double t_eval, const AdjointConfig& cfg);

struct IterativeOptions {
  double tol_x = 1e-12;
  int max_iter = 30;
};

/// Secant iteration on g starting from x0 = t_L, x1 = t_R.
EstimateReport secant_estimate(const OdeProblem& problem, const PiecewiseSolution& forward,
                               const ThresholdSpec& spec, const CrossingResult& crossing,
                               const AdjointConfig& cfg, const IterativeOptions& opt = {});

/// Inverse quadratic interpolation on g starting from x0 = t_LL, x1 = t_L,
/// x2 = t_R; requires the crossing to carry t_LL.
EstimateReport inverse_quadratic_estimate(const OdeProblem& problem,
                                          const PiecewiseSolution& forward,
                                          const ThresholdSpec& spec,
                                          const CrossingResult& crossing,
                                          const AdjointConfig& cfg,
                                          const IterativeOptions& opt = {});

struct ConvergenceRow {
  double h = 0.0;
  int n_elements = 0;
  double t_c = 0.0;
  double e_q = 0.0;
  double solution_error = 0.0;  // ||y(t_c) - Y(t_c)|| against the reference
  std::optional<double> eta;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double fitted_order_qoi = 0.0;
  double fitted_order_solution = 0.0;
};

/// Runs the solve/detect pipeline over a list of uniform mesh sizes and fits
/// the observed order of |e_Q| (and of the solution error at t_c) by the
/// least-squares slope of log-error against log h.
ConvergenceTable convergence_study(const std::string& problem_name, const ParamMap& params,
                                   const std::optional<ThresholdSpec>& spec_override, int q,
                                   const std::vector<int>& mesh_sizes,
                                   std::optional<EstimateMethod> estimator,
                                   const AdjointConfig& cfg);

}  // namespace crosstime
