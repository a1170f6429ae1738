#include "crosstime/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace crosstime {

namespace {

// Legendre P_n and derivative at x in [-1,1] via the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) { p = p0; dp = 0.0; return; }
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, p, dp);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map from [-1,1] to [0,1]; x is a root in (0,1], mirror gives the rest
    rule.points[i] = (1.0 - x) / 2.0;
    rule.points[n - 1 - i] = (1.0 + x) / 2.0;
    rule.weights[i] = w / 2.0;
    rule.weights[n - 1 - i] = w / 2.0;
  }
  return rule;
}

QuadratureRule trapezoid() {
  return QuadratureRule{{0.0, 1.0}, {0.5, 0.5}};
}

std::vector<double> gauss_lobatto_points(int q) {
  if (q < 1) throw std::invalid_argument("gauss_lobatto_points: need q >= 1");
  const int n = q + 1;
  std::vector<double> pts(n);
  pts.front() = 0.0;
  pts.back() = 1.0;
  const double pi = 3.14159265358979323846;
  // interior points are the roots of P'_q; Newton from the Chebyshev-Gauss-Lobatto guess
  for (int i = 1; i < q; ++i) {
    double x = std::cos(pi * i / q);
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre_pair(q, x, p, dp);
      // d2p from the Legendre ODE: (1-x^2) p'' = 2x p' - q(q+1) p
      double d2p = (2.0 * x * dp - q * (q + 1.0) * p) / (1.0 - x * x);
      double dx = -dp / d2p;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    pts[q - i] = (1.0 + x) / 2.0;
  }
  // enforce exact symmetry about 1/2 so that time reversal maps nodes onto nodes
  for (int i = 0; i < n / 2; ++i) {
    double s = 0.5 * (pts[i] + (1.0 - pts[n - 1 - i]));
    pts[i] = s;
    pts[n - 1 - i] = 1.0 - s;
  }
  if (n % 2 == 1) pts[n / 2] = 0.5;
  return pts;
}

double shifted_legendre(int i, double s) {
  const double x = 2.0 * s - 1.0;
  double p0 = 1.0, p1 = x;
  if (i == 0) return p0;
  for (int k = 2; k <= i; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace crosstime
