#pragma once

#include <Eigen/Dense>
#include <vector>

#include "crosstime/lagrange.hpp"
#include "crosstime/mesh.hpp"

namespace crosstime {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Globally continuous piecewise-polynomial trajectory on a time mesh.
///
/// Each element stores the nodal values of all components on the
/// Gauss-Lobatto points of that element; adjacent elements share their
/// endpoint value, so continuity holds by construction.
class PiecewiseSolution {
 public:
  PiecewiseSolution(TimeMesh mesh, int degree, int dim,
                    std::vector<Matrix> element_values);

  const TimeMesh& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const std::vector<double>& ref_nodes() const { return basis_.nodes(); }

  /// Nodal values of element e: dim x (degree+1).
  const Matrix& element_values(int e) const { return values_[e]; }

  /// Value stored at mesh node i.
  Vector node_value(int i) const;

  Vector eval(double t) const;

  /// Time derivative; right-limit at interior mesh nodes.
  Vector deriv(double t) const;

  /// Value and derivative restricted to element e at reference coordinate s in [0,1].
  Vector eval_on_element(int e, double s) const;
  Vector deriv_on_element(int e, double s) const;

 private:
  TimeMesh mesh_;
  int degree_;
  int dim_;
  LagrangeBasis basis_;
  std::vector<Matrix> values_;
};

}  // namespace crosstime
