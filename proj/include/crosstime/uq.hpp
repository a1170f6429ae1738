#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crosstime/estimators.hpp"
#include "crosstime/rng.hpp"

namespace crosstime {

/// Law of one scalar problem parameter (or initial-condition component)
/// identified by its builtin() parameter key.
struct ParameterDistribution {
  enum class Kind { normal, uniform };
  Kind kind = Kind::uniform;
  std::string target;
  double a = 0.0;  // mean (normal) or lower bound (uniform)
  double b = 1.0;  // stddev (normal) or upper bound (uniform)

  void validate() const {
    if (kind == Kind::normal && !(b > 0.0))
      throw std::invalid_argument("ParameterDistribution: stddev must be positive");
    if (kind == Kind::uniform && !(a < b))
      throw std::invalid_argument("ParameterDistribution: need lo < hi");
  }
};

enum class SampleStatus { ok, no_crossing, estimator_failed, build_failed };

std::string to_string(SampleStatus s);

struct QoiSample {
  std::vector<double> theta;
  double q_hat = 0.0;
  double eta = 0.0;
  SampleStatus status = SampleStatus::ok;
};

/// Monte Carlo draw of the crossing-time QoI with a per-sample error estimate.
struct QoiSampleSet {
  std::vector<QoiSample> samples;
  std::uint64_t seed = 0;
  int n_requested = 0;
  int n_ok = 0;
  std::string generator;
  std::vector<std::string> targets;
};

struct UqRunConfig {
  int n_elements = 40;   // forward mesh
  int q = 1;             // forward degree
  AdjointConfig adjoint;
  EstimateMethod estimator = EstimateMethod::taylor;
  int jobs = 1;
};

/// Draws N parameter samples, solves each instance forward, detects the
/// crossing, and attaches the per-sample error estimate eta. Samples without
/// a crossing (or with a failed estimate) are recorded with their status and
/// excluded from the CDF terms.
QoiSampleSet draw_samples(const std::string& family,
                          const std::vector<ParameterDistribution>& dists,
                          const ThresholdSpec& spec, int N, std::uint64_t seed,
                          const UqRunConfig& run);

/// Fraction of successful samples with q_hat <= t.
double empirical_cdf(const QoiSampleSet& set, double t);

/// Right-continuous step CDF over a fixed sample of reference QoI values.
class StepCdf {
 public:
  explicit StepCdf(std::vector<double> sorted_values);
  double operator()(double t) const;
  int size() const { return static_cast<int>(values_.size()); }

 private:
  std::vector<double> values_;
};

/// Reference-sample CDF with the same parameter stream as draw_samples:
/// per-sample QoI values come from the closed form when the family has one
/// and from reference_qoi(tol) otherwise.
StepCdf nominal_cdf(const std::string& family, const std::vector<ParameterDistribution>& dists,
                    const ThresholdSpec& spec, int n_nom, std::uint64_t seed, double tol);

/// Pointwise three-term bound on |F(t) - F_hat(t)|, valid with probability
/// at least 1 - 2 eps + eps^2:
///   sqrt(F_hat (1-F_hat) / (N eps))                                sampling
///   + (1/N + 1/(N sqrt(eps))) * #{n : |t - q_hat_n| <= |eta_n|}    discretization
///   + 2 / (2 N eps)^(3/4)                                          remainder
struct CdfBoundCurve {
  std::vector<double> t_grid;
  std::vector<double> f_hat;
  std::vector<double> sampling_term;
  std::vector<double> discretization_term;
  std::vector<double> remainder_term;
  std::vector<double> total_bound;
  double epsilon = 0.0;
};

CdfBoundCurve cdf_error_bound(const QoiSampleSet& set, double epsilon,
                              const std::vector<double>& t_grid);

/// Default evaluation grid: n uniform points on
/// [min q_hat - max|eta|, max q_hat + max|eta|].
std::vector<double> default_t_grid(const QoiSampleSet& set, int n = 400);

}  // namespace crosstime
