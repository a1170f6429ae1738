#include <doctest.h>

#include <cmath>

#include "crosstime/lagrange.hpp"
#include "crosstime/quadrature.hpp"

using namespace crosstime;

TEST_CASE("gauss-legendre integrates monomials exactly up to degree 2n-1") {
  for (int n = 1; n <= 10; ++n) {
    const QuadratureRule rule = gauss_legendre(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double acc = 0.0;
      for (int k = 0; k < rule.size(); ++k)
        acc += rule.weights[k] * std::pow(rule.points[k], d);
      CHECK(acc == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("trapezoid rule is exact for linear functions") {
  const QuadratureRule rule = trapezoid();
  double acc = 0.0;
  for (int k = 0; k < rule.size(); ++k)
    acc += rule.weights[k] * (3.0 * rule.points[k] - 1.0);
  CHECK(acc == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("gauss-lobatto points include endpoints and are symmetric") {
  for (int q = 1; q <= 4; ++q) {
    const auto pts = gauss_lobatto_points(q);
    REQUIRE(pts.size() == static_cast<std::size_t>(q + 1));
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == 1.0);
    for (int j = 0; j <= q; ++j)
      CHECK(pts[j] == doctest::Approx(1.0 - pts[q - j]).epsilon(1e-15));
    for (int j = 0; j < q; ++j) CHECK(pts[j] < pts[j + 1]);
  }
  // degree 2 and 3 have known interior nodes
  CHECK(gauss_lobatto_points(2)[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gauss_lobatto_points(3)[1] ==
        doctest::Approx(0.5 - 0.5 / std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("lagrange basis has the cardinal property and exact derivatives") {
  const LagrangeBasis basis(gauss_lobatto_points(3));
  for (int j = 0; j < basis.size(); ++j)
    for (int k = 0; k < basis.size(); ++k)
      CHECK(basis.value(j, basis.nodes()[k]) == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-13));

  // derivative of the interpolant of s^3 is 3 s^2
  for (double s : {0.1, 0.35, 0.8}) {
    double acc = 0.0;
    for (int j = 0; j < basis.size(); ++j)
      acc += basis.deriv(j, s) * std::pow(basis.nodes()[j], 3);
    CHECK(acc == doctest::Approx(3.0 * s * s).epsilon(1e-12));
  }
}
