#include "crosstime/adjoint.hpp"

#include <algorithm>
#include <cmath>

#include "crosstime/fem_solver.hpp"

namespace crosstime {

AdjointSolution solve_adjoint(const OdeProblem& problem, const PiecewiseSolution& forward,
                              const Vector& psi, double t_hat, const AdjointConfig& cfg) {
  problem.validate();
  if (psi.size() != problem.dim)
    throw std::invalid_argument("solve_adjoint: psi has wrong dimension");
  if (!(t_hat > problem.t0) || t_hat > problem.T)
    throw std::out_of_range("solve_adjoint: t_hat must lie in (t0, T]");
  if (cfg.degree < 1 || cfg.n_elements < 1)
    throw std::invalid_argument("solve_adjoint: invalid adjoint discretization");

  const double t0 = problem.t0;
  const double span = t_hat - t0;
  const double t_fwd_max = forward.mesh().t1();

  // Transformed problem in tau = t_hat - t: chi' = J(t_hat - tau)^T chi.
  auto jac_at = [&, t_hat](double tau) {
    double t = t_hat - tau;
    t = std::min(std::max(t, t0), t_fwd_max);
    return Matrix(problem.jacobian(forward.eval(t), t).transpose());
  };
  OdeProblem transformed;
  transformed.dim = problem.dim;
  transformed.t0 = 0.0;
  transformed.T = span;
  transformed.y0 = psi;
  transformed.label = problem.label + "_adjoint";
  transformed.rhs = [jac_at](const Vector& chi, double tau) { return Vector(jac_at(tau) * chi); };
  transformed.jacobian = [jac_at](const Vector&, double tau) { return jac_at(tau); };

  const TimeMesh tau_mesh = TimeMesh::uniform(0.0, span, cfg.n_elements);
  PiecewiseSolution chi = solve_cg(transformed, tau_mesh, cfg.degree);

  // Map back to t = t_hat - tau. Gauss-Lobatto points are symmetric, so
  // reversing elements and their nodal columns gives the trajectory in t.
  const int n = cfg.n_elements;
  std::vector<double> t_nodes(n + 1);
  for (int i = 0; i <= n; ++i) t_nodes[i] = t_hat - tau_mesh.node(n - i);
  t_nodes.front() = t0;
  t_nodes.back() = t_hat;

  std::vector<Matrix> values(n);
  for (int e = 0; e < n; ++e) {
    const Matrix& src = chi.element_values(n - 1 - e);
    values[e] = src.rowwise().reverse();
  }

  return AdjointSolution{
      PiecewiseSolution(TimeMesh(std::move(t_nodes)), cfg.degree, problem.dim,
                        std::move(values)),
      psi, t_hat};
}

double error_functional(const OdeProblem& problem, const PiecewiseSolution& forward,
                        const AdjointSolution& adj, int quad_points) {
  if (forward.dim() != problem.dim || adj.sol.dim() != problem.dim)
    throw std::invalid_argument("error_functional: dimension mismatch");

  const double t0 = problem.t0;
  const double t_hat = adj.t_hat;

  std::vector<double> nodes;
  for (double t : forward.mesh().nodes())
    if (t < t_hat) nodes.push_back(t);
  for (double t : adj.sol.mesh().nodes()) nodes.push_back(t);
  nodes.push_back(t0);
  nodes.push_back(t_hat);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  nodes.erase(std::remove_if(nodes.begin(), nodes.end(),
                             [&](double t) { return t < t0 || t > t_hat; }),
              nodes.end());

  const QuadratureRule rule = gauss_legendre(quad_points);
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
    const double a = nodes[e];
    const double h = nodes[e + 1] - a;
    if (h <= 0.0) continue;
    double acc = 0.0;
    for (int k = 0; k < rule.size(); ++k) {
      const double t = a + rule.points[k] * h;
      const Vector phi = adj.sol.eval(t);
      const Vector res = problem.rhs(forward.eval(t), t) - forward.deriv(t);
      acc += rule.weights[k] * phi.dot(res);
    }
    total += h * acc;
  }
  return total;
}

}  // namespace crosstime
