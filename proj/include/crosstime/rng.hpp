#pragma once

#include <cstdint>
#include <string>

namespace crosstime {

/// Seedable counter-based generator: draw i is a pure function of
/// (seed, counter), so sample streams do not depend on evaluation order.
/// The mixing function is splitmix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::string name() { return "splitmix64"; }

  /// Uniform draw in the open interval (0, 1).
  double uniform01(std::uint64_t counter) const;

  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform01(counter);
  }

  double normal(std::uint64_t counter, double mean, double stddev) const;

 private:
  std::uint64_t seed_;
};

/// Inverse of the standard normal CDF, accurate to full double precision.
double inverse_normal_cdf(double p);

}  // namespace crosstime
