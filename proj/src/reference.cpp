#include <cmath>

#include "crosstime/crossing.hpp"
#include "crosstime/fem_solver.hpp"
#include "crosstime/problems.hpp"

namespace crosstime {

namespace {
constexpr int kReferenceElements = 4096;
constexpr int kReferenceDegree = 2;
}  // namespace

PiecewiseSolution reference_solution(const OdeProblem& problem) {
  return solve_cg(problem, TimeMesh::uniform(problem.t0, problem.T, kReferenceElements),
                  kReferenceDegree);
}

double reference_qoi(const OdeProblem& problem, const ThresholdSpec& spec, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("reference_qoi: tol must be positive");

  auto crossing_at = [&](int n_elements) {
    auto sol = solve_cg(problem, TimeMesh::uniform(problem.t0, problem.T, n_elements),
                        kReferenceDegree);
    return detect_first_crossing(sol, spec).t_c;
  };

  const double t_coarse = crossing_at(kReferenceElements);
  const double t_fine = crossing_at(2 * kReferenceElements);
  if (std::abs(t_fine - t_coarse) > tol)
    throw SolverError("reference_qoi: step-halving check failed; solves differ by " +
                      std::to_string(std::abs(t_fine - t_coarse)));
  return t_fine;
}

}  // namespace crosstime
