#include "crosstime/piecewise.hpp"

#include <stdexcept>

#include "crosstime/quadrature.hpp"

namespace crosstime {

PiecewiseSolution::PiecewiseSolution(TimeMesh mesh, int degree, int dim,
                                     std::vector<Matrix> element_values)
    : mesh_(std::move(mesh)),
      degree_(degree),
      dim_(dim),
      basis_(gauss_lobatto_points(degree)),
      values_(std::move(element_values)) {
  if (degree_ < 1) throw std::invalid_argument("PiecewiseSolution: degree must be >= 1");
  if (dim_ < 1) throw std::invalid_argument("PiecewiseSolution: dim must be >= 1");
  if (static_cast<int>(values_.size()) != mesh_.n_elements())
    throw std::invalid_argument("PiecewiseSolution: one value block per element required");
  for (const auto& m : values_) {
    if (m.rows() != dim_ || m.cols() != degree_ + 1)
      throw std::invalid_argument("PiecewiseSolution: value block has wrong shape");
  }
}

Vector PiecewiseSolution::node_value(int i) const {
  if (i < mesh_.n_elements()) return values_[i].col(0);
  return values_.back().col(degree_);
}

Vector PiecewiseSolution::eval_on_element(int e, double s) const {
  const Matrix& u = values_[e];
  Vector out = Vector::Zero(dim_);
  for (int j = 0; j <= degree_; ++j) out += basis_.value(j, s) * u.col(j);
  return out;
}

Vector PiecewiseSolution::deriv_on_element(int e, double s) const {
  const Matrix& u = values_[e];
  Vector out = Vector::Zero(dim_);
  for (int j = 0; j <= degree_; ++j) out += basis_.deriv(j, s) * u.col(j);
  return out / mesh_.element_width(e);
}

Vector PiecewiseSolution::eval(double t) const {
  int e = mesh_.element_of(t);
  double s = (t - mesh_.node(e)) / mesh_.element_width(e);
  return eval_on_element(e, s);
}

Vector PiecewiseSolution::deriv(double t) const {
  int e = mesh_.element_of(t);
  double s = (t - mesh_.node(e)) / mesh_.element_width(e);
  return deriv_on_element(e, s);
}

}  // namespace crosstime
