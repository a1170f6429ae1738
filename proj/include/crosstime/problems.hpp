#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "crosstime/piecewise.hpp"

namespace crosstime {

/// First-order ODE system y' = f(y,t) on (t0, T] with y(t0) = y0.
struct OdeProblem {
  int dim = 0;
  std::function<Vector(const Vector&, double)> rhs;
  std::function<Matrix(const Vector&, double)> jacobian;
  Vector y0;
  double t0 = 0.0;
  double T = 0.0;
  std::optional<std::function<Vector(double)>> analytic;
  std::string label;

  void validate() const {
    if (dim < 1) throw std::invalid_argument("OdeProblem: dim must be >= 1");
    if (!(T > t0)) throw std::invalid_argument("OdeProblem: need T > t0");
    if (y0.size() != dim) throw std::invalid_argument("OdeProblem: y0 has wrong length");
    if (!rhs || !jacobian) throw std::invalid_argument("OdeProblem: rhs and jacobian required");
  }
};

/// Linear functional S(y) = v . y together with the threshold value R.
struct ThresholdSpec {
  Vector v;
  double R = 0.0;

  ThresholdSpec() = default;
  ThresholdSpec(Vector v_, double R_) : v(std::move(v_)), R(R_) {
    if (v.size() == 0 || v.isZero(0.0))
      throw std::invalid_argument("ThresholdSpec: weight vector must be nonzero");
  }
};

using ParamMap = std::map<std::string, double>;

/// Instantiates one of the built-in test problems by name.
///
/// Names: linear_scalar, nonlinear_scalar, linear_system, harmonic,
/// harmonic_shifted, heat_semidiscrete, two_body, logistic, lorenz.
/// params can override problem constants (e.g. k, m for harmonic; sigma, r, b,
/// y1_0 for lorenz; k, K for logistic; n_interior for heat; a for
/// linear_scalar) and R for any problem.
std::pair<OdeProblem, ThresholdSpec> builtin(const std::string& name,
                                             const ParamMap& params = {});

/// Signals that a threshold is never reached on (t0, T].
struct NoCrossingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// First time in (t0, T] with v . y(t) = R, computed from the problem's
/// closed-form solution. Throws std::invalid_argument when no closed form is
/// attached and NoCrossingError when the threshold is never reached.
double analytic_qoi(const OdeProblem& problem, const ThresholdSpec& spec);
double analytic_qoi(const std::string& name, const ThresholdSpec& spec);

/// High-accuracy crossing time from a fine forward solve, with a step-halving
/// consistency check: two solves at h and h/2 must agree to tol.
double reference_qoi(const OdeProblem& problem, const ThresholdSpec& spec, double tol);

/// Reference trajectory used by reference_qoi (degree 2, 4096 elements).
PiecewiseSolution reference_solution(const OdeProblem& problem);

}  // namespace crosstime
