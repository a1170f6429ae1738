#include "crosstime/fem_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crosstime/lagrange.hpp"

namespace crosstime {

namespace {

constexpr double kNewtonTol = 1e-12;
constexpr int kNewtonMaxIter = 50;

struct ElementTables {
  // L(j,k):  l_j at quadrature point k
  // dL(j,k): l_j' at quadrature point k (reference derivative)
  // P(i,k):  test polynomial P_i at quadrature point k
  // mass(j,i) = sum_k w_k l_j'(x_k) P_i(x_k)
  Matrix L, dL, P, mass;
};

ElementTables build_tables(const LagrangeBasis& basis, const QuadratureRule& rule, int q) {
  const int nq = rule.size();
  ElementTables t;
  t.L.resize(q + 1, nq);
  t.dL.resize(q + 1, nq);
  t.P.resize(q, nq);
  for (int k = 0; k < nq; ++k) {
    const double x = rule.points[k];
    for (int j = 0; j <= q; ++j) {
      t.L(j, k) = basis.value(j, x);
      t.dL(j, k) = basis.deriv(j, x);
    }
    for (int i = 0; i < q; ++i) t.P(i, k) = shifted_legendre(i, x);
  }
  t.mass = Matrix::Zero(q + 1, q);
  for (int j = 0; j <= q; ++j)
    for (int i = 0; i < q; ++i)
      for (int k = 0; k < nq; ++k)
        t.mass(j, i) += rule.weights[k] * t.dL(j, k) * t.P(i, k);
  return t;
}

}  // namespace

PiecewiseSolution solve_cg(const OdeProblem& problem, const TimeMesh& mesh, int q,
                           const QuadratureRule& rule) {
  problem.validate();
  if (q < 1) throw std::invalid_argument("solve_cg: q must be >= 1");
  if (rule.size() < 2 * q)
    throw std::invalid_argument("solve_cg: quadrature must have at least 2q points");
  if (std::abs(mesh.t0() - problem.t0) > 0.0 || std::abs(mesh.t1() - problem.T) > 0.0)
    throw std::invalid_argument("solve_cg: mesh must span [t0, T]");

  const int m = problem.dim;
  const int nq = rule.size();
  const LagrangeBasis basis(gauss_lobatto_points(q));
  const ElementTables tab = build_tables(basis, rule, q);

  std::vector<Matrix> values(mesh.n_elements());
  Vector left = problem.y0;

  Matrix u(m, q + 1);           // nodal values on the current element
  Vector f_res(m * q);          // stacked residual blocks
  Matrix jac(m * q, m * q);     // Newton matrix
  std::vector<Vector> f_at(nq, Vector(m));
  std::vector<Matrix> jf_at(nq, Matrix(m, m));

  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double ta = mesh.node(e);
    const double h = mesh.element_width(e);

    u.col(0) = left;
    for (int j = 1; j <= q; ++j) u.col(j) = left;

    bool converged = false;
    double res_norm = 0.0;
    for (int iter = 0; iter <= kNewtonMaxIter; ++iter) {
      for (int k = 0; k < nq; ++k) {
        Vector yk = Vector::Zero(m);
        for (int j = 0; j <= q; ++j) yk += tab.L(j, k) * u.col(j);
        const double tk = ta + rule.points[k] * h;
        f_at[k] = problem.rhs(yk, tk);
        jf_at[k] = problem.jacobian(yk, tk);
      }

      for (int i = 0; i < q; ++i) {
        Vector block = Vector::Zero(m);
        for (int j = 0; j <= q; ++j) block += tab.mass(j, i) * u.col(j);
        for (int k = 0; k < nq; ++k)
          block -= h * rule.weights[k] * tab.P(i, k) * f_at[k];
        f_res.segment(i * m, m) = block;
      }

      res_norm = f_res.lpNorm<Eigen::Infinity>();
      if (!std::isfinite(res_norm))
        throw SolverError("solve_cg: non-finite residual on element " + std::to_string(e));
      if (res_norm <= kNewtonTol) {
        converged = true;
        break;
      }
      if (iter == kNewtonMaxIter) break;

      jac.setZero();
      for (int i = 0; i < q; ++i) {
        for (int j = 1; j <= q; ++j) {
          Matrix blk = tab.mass(j, i) * Matrix::Identity(m, m);
          for (int k = 0; k < nq; ++k)
            blk -= h * rule.weights[k] * tab.P(i, k) * tab.L(j, k) * jf_at[k];
          jac.block(i * m, (j - 1) * m, m, m) = blk;
        }
      }

      Vector step = jac.partialPivLu().solve(f_res);
      if (!step.allFinite())
        throw SolverError("solve_cg: singular element Jacobian on element " + std::to_string(e));
      for (int j = 1; j <= q; ++j) u.col(j) -= step.segment((j - 1) * m, m);
    }

    if (!converged)
      throw SolverError("solve_cg: Newton did not converge on element " + std::to_string(e) +
                        " (last residual " + std::to_string(res_norm) + ")");

    values[e] = u;
    left = u.col(q);
  }

  return PiecewiseSolution(mesh, q, m, std::move(values));
}

PiecewiseSolution solve_cg(const OdeProblem& problem, const TimeMesh& mesh, int q,
                           int quad_points) {
  const int n = quad_points > 0 ? quad_points : std::max(2 * q, 5);
  return solve_cg(problem, mesh, q, gauss_legendre(n));
}

PiecewiseSolution solve_crank_nicolson(const OdeProblem& problem, const TimeMesh& mesh) {
  problem.validate();
  if (std::abs(mesh.t0() - problem.t0) > 0.0 || std::abs(mesh.t1() - problem.T) > 0.0)
    throw std::invalid_argument("solve_crank_nicolson: mesh must span [t0, T]");

  const int m = problem.dim;
  std::vector<Matrix> values(mesh.n_elements());
  Vector yn = problem.y0;

  for (int e = 0; e < mesh.n_elements(); ++e) {
    const double tn = mesh.node(e);
    const double tn1 = mesh.node(e + 1);
    const double h = tn1 - tn;
    const Vector fn = problem.rhs(yn, tn);

    Vector u = yn;
    bool converged = false;
    for (int iter = 0; iter <= kNewtonMaxIter; ++iter) {
      Vector g = u - yn - 0.5 * h * (fn + problem.rhs(u, tn1));
      const double res_norm = g.lpNorm<Eigen::Infinity>();
      if (!std::isfinite(res_norm))
        throw SolverError("solve_crank_nicolson: non-finite residual at step " +
                          std::to_string(e));
      if (res_norm <= kNewtonTol) {
        converged = true;
        break;
      }
      if (iter == kNewtonMaxIter) break;
      Matrix jg = Matrix::Identity(m, m) - 0.5 * h * problem.jacobian(u, tn1);
      Vector step = jg.partialPivLu().solve(g);
      if (!step.allFinite())
        throw SolverError("solve_crank_nicolson: singular step Jacobian at step " +
                          std::to_string(e));
      u -= step;
    }
    if (!converged)
      throw SolverError("solve_crank_nicolson: Newton did not converge at step " +
                        std::to_string(e));

    Matrix block(m, 2);
    block.col(0) = yn;
    block.col(1) = u;
    values[e] = block;
    yn = u;
  }

  return PiecewiseSolution(mesh, 1, m, std::move(values));
}

Vector residual(const OdeProblem& problem, const PiecewiseSolution& sol, double t) {
  return problem.rhs(sol.eval(t), t) - sol.deriv(t);
}

}  // namespace crosstime
