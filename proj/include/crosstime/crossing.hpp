#pragma once

#include <optional>

#include "crosstime/problems.hpp"

namespace crosstime {

struct StartsOnThresholdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// First crossing time of v . Y(t) = R together with the bracketing mesh
/// nodes t_L < t_c < t_R and, when it exists, the node t_LL just left of t_L.
struct CrossingResult {
  double t_c = 0.0;
  int element_index = 0;
  std::optional<double> t_ll;
  double t_l = 0.0;
  double t_r = 0.0;
};

/// Locates the first t in (t0, T] with v . Y(t) = R by an elementwise
/// sign-change scan followed by an in-element polish. For degree-1 solutions
/// the polish is the closed-form linear interpolation between the bracketing
/// nodal values. Throws NoCrossingError / StartsOnThresholdError.
CrossingResult detect_first_crossing(const PiecewiseSolution& sol, const ThresholdSpec& spec);

/// v . Y(t).
double functional_value(const PiecewiseSolution& sol, const Vector& v, double t);

}  // namespace crosstime
