#pragma once

#include <stdexcept>

#include "crosstime/problems.hpp"
#include "crosstime/quadrature.hpp"

namespace crosstime {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Continuous Galerkin time stepping of degree q: on each element the
/// variational condition holds against all test polynomials of degree <= q-1,
/// with integrals evaluated by the given quadrature rule. Nonlinear element
/// systems are solved by Newton iteration on the element unknowns.
PiecewiseSolution solve_cg(const OdeProblem& problem, const TimeMesh& mesh, int q,
                           const QuadratureRule& rule);

/// Same, with Gauss-Legendre quadrature of quad_points per element;
/// quad_points = 0 selects the default max(2q, 5).
PiecewiseSolution solve_cg(const OdeProblem& problem, const TimeMesh& mesh, int q,
                           int quad_points = 0);

/// Crank-Nicolson stepping; between nodes the trajectory is the linear
/// interpolant, so the result is a degree-1 PiecewiseSolution.
PiecewiseSolution solve_crank_nicolson(const OdeProblem& problem, const TimeMesh& mesh);

/// Pointwise residual f(Y(t), t) - Y'(t); right-limit derivative at nodes.
Vector residual(const OdeProblem& problem, const PiecewiseSolution& sol, double t);

}  // namespace crosstime
