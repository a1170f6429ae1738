#pragma once

#include <vector>

namespace crosstime {

/// Quadrature rule on the reference interval [0,1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Gauss-Legendre rule with n points, exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// Trapezoidal rule (endpoints only), exact for degree 1.
QuadratureRule trapezoid();

/// Gauss-Lobatto points (not weights) on [0,1] for polynomial degree q:
/// q+1 points including both endpoints.
std::vector<double> gauss_lobatto_points(int q);

/// Legendre polynomial P_i mapped to [0,1], i.e. P_i(2s-1).
double shifted_legendre(int i, double s);

}  // namespace crosstime
