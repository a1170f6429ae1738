#pragma once

#include "crosstime/problems.hpp"

namespace crosstime {

/// Discretization of the backward adjoint solve: cG(degree) on a uniform mesh
/// of n_elements, plus the Gauss-Legendre order used when pairing the adjoint
/// with the forward residual over the merged mesh.
struct AdjointConfig {
  int degree = 3;
  int n_elements = 100;
  int quad_points = 7;
};

/// Adjoint trajectory phi on [t0, t_hat] with imposed terminal value
/// phi(t_hat) = psi.
struct AdjointSolution {
  PiecewiseSolution sol;
  Vector psi;
  double t_hat = 0.0;
};

/// Solves -phi' = J(t)^T phi backward from phi(t_hat) = psi, where J is the
/// problem Jacobian linearized about the computed forward solution. The
/// terminal-value problem is transformed by tau = t_hat - t and integrated
/// forward with cG(cfg.degree) on cfg.n_elements uniform elements.
AdjointSolution solve_adjoint(const OdeProblem& problem, const PiecewiseSolution& forward,
                              const Vector& psi, double t_hat, const AdjointConfig& cfg);

/// Dual-weighted residual integral over [t0, t_hat]:
///   integral of phi . (f(Y,t) - Y'(t)) dt
/// on the union of the forward and adjoint meshes, approximating
/// psi . (y(t_hat) - Y(t_hat)).
double error_functional(const OdeProblem& problem, const PiecewiseSolution& forward,
                        const AdjointSolution& adj, int quad_points = 7);

}  // namespace crosstime
