#include "crosstime/crossing.hpp"

#include <cmath>

namespace crosstime {

namespace {

// Bisection on a bracketing subinterval followed by one Newton step kept
// inside the element.
double polish_root(const PiecewiseSolution& sol, const ThresholdSpec& spec, int e, double sa,
                   double sb, double fa, double fb) {
  const double ta = sol.mesh().node(e);
  const double h = sol.mesh().element_width(e);
  auto s_of = [&](double s) { return spec.v.dot(sol.eval_on_element(e, s)) - spec.R; };

  if (sol.degree() == 1) {
    // linear interpolation between the bracketing values is exact
    const double s = sa + (sb - sa) * (0.0 - fa) / (fb - fa);
    return ta + s * h;
  }

  double a = sa, b = sb, va = fa;
  for (int it = 0; it < 30; ++it) {
    const double mid = 0.5 * (a + b);
    const double vm = s_of(mid);
    if (va * vm <= 0.0) {
      b = mid;
    } else {
      a = mid;
      va = vm;
    }
  }
  double s = 0.5 * (a + b);
  const double slope = spec.v.dot(sol.deriv_on_element(e, s)) * h;
  if (slope != 0.0) {
    const double s_new = s - s_of(s) / slope;
    if (s_new > 0.0 && s_new < 1.0) s = s_new;
  }
  return ta + s * h;
}

}  // namespace

CrossingResult detect_first_crossing(const PiecewiseSolution& sol, const ThresholdSpec& spec) {
  if (spec.v.size() != sol.dim())
    throw std::invalid_argument("detect_first_crossing: weight dimension mismatch");

  const TimeMesh& mesh = sol.mesh();
  const double s0 = spec.v.dot(sol.eval_on_element(0, 0.0)) - spec.R;
  if (s0 == 0.0)
    throw StartsOnThresholdError("detect_first_crossing: S(Y(t0)) equals the threshold");

  const int n_sub = sol.degree() == 1 ? 1 : 16 * sol.degree();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    double sa = 0.0;
    double fa = spec.v.dot(sol.eval_on_element(e, 0.0)) - spec.R;
    for (int k = 1; k <= n_sub; ++k) {
      const double sb = static_cast<double>(k) / n_sub;
      const double fb = spec.v.dot(sol.eval_on_element(e, sb)) - spec.R;
      if (fa * fb < 0.0 || fb == 0.0) {
        CrossingResult out;
        out.t_c = polish_root(sol, spec, e, sa, sb, fa, fb);
        out.element_index = e;
        out.t_l = mesh.node(e);
        out.t_r = mesh.node(e + 1);
        if (e > 0) out.t_ll = mesh.node(e - 1);
        return out;
      }
      sa = sb;
      fa = fb;
    }
  }
  throw NoCrossingError("detect_first_crossing: threshold never reached on (t0, T]");
}

double functional_value(const PiecewiseSolution& sol, const Vector& v, double t) {
  if (v.size() != sol.dim())
    throw std::invalid_argument("functional_value: weight dimension mismatch");
  return v.dot(sol.eval(t));
}

}  // namespace crosstime
