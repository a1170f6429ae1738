#include "crosstime/uq.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "crosstime/fem_solver.hpp"

namespace crosstime {

namespace {

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += jobs) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<double> draw_theta(const CounterRng& rng,
                               const std::vector<ParameterDistribution>& dists, int sample) {
  std::vector<double> theta(dists.size());
  for (std::size_t d = 0; d < dists.size(); ++d) {
    const std::uint64_t counter =
        static_cast<std::uint64_t>(sample) * dists.size() + d;
    theta[d] = dists[d].kind == ParameterDistribution::Kind::normal
                   ? rng.normal(counter, dists[d].a, dists[d].b)
                   : rng.uniform(counter, dists[d].a, dists[d].b);
  }
  return theta;
}

ParamMap theta_params(const std::vector<ParameterDistribution>& dists,
                      const std::vector<double>& theta) {
  ParamMap params;
  for (std::size_t d = 0; d < dists.size(); ++d) params[dists[d].target] = theta[d];
  return params;
}

}  // namespace

std::string to_string(SampleStatus s) {
  switch (s) {
    case SampleStatus::ok: return "ok";
    case SampleStatus::no_crossing: return "no_crossing";
    case SampleStatus::estimator_failed: return "estimator_failed";
    case SampleStatus::build_failed: return "build_failed";
  }
  return "?";
}

QoiSampleSet draw_samples(const std::string& family,
                          const std::vector<ParameterDistribution>& dists,
                          const ThresholdSpec& spec, int N, std::uint64_t seed,
                          const UqRunConfig& run) {
  if (N < 1) throw std::invalid_argument("draw_samples: N must be >= 1");
  for (const auto& d : dists) d.validate();
  // reject unknown targets up front, against the family's parameter contract
  builtin(family, theta_params(dists, draw_theta(CounterRng(seed), dists, 0)));

  QoiSampleSet set;
  set.seed = seed;
  set.n_requested = N;
  set.generator = CounterRng::name();
  for (const auto& d : dists) set.targets.push_back(d.target);
  set.samples.resize(N);

  const CounterRng rng(seed);
  parallel_for(N, run.jobs, [&](int n) {
    QoiSample& s = set.samples[n];
    s.theta = draw_theta(rng, dists, n);
    try {
      auto [problem, unused] = builtin(family, theta_params(dists, s.theta));
      (void)unused;
      const TimeMesh mesh = TimeMesh::uniform(problem.t0, problem.T, run.n_elements);
      const PiecewiseSolution sol = solve_cg(problem, mesh, run.q);
      const CrossingResult crossing = detect_first_crossing(sol, spec);
      s.q_hat = crossing.t_c;

      EstimateReport rep;
      switch (run.estimator) {
        case EstimateMethod::taylor:
          rep = taylor_estimate(problem, sol, spec, crossing, run.adjoint);
          break;
        case EstimateMethod::secant:
          rep = secant_estimate(problem, sol, spec, crossing, run.adjoint);
          break;
        case EstimateMethod::inverse_quadratic:
          rep = inverse_quadratic_estimate(problem, sol, spec, crossing, run.adjoint);
          break;
      }
      if (rep.status != EstimateStatus::converged) {
        s.status = SampleStatus::estimator_failed;
        return;
      }
      s.eta = rep.eta;
      s.status = SampleStatus::ok;
    } catch (const NoCrossingError&) {
      s.status = SampleStatus::no_crossing;
    } catch (const std::exception&) {
      s.status = SampleStatus::build_failed;
    }
  });

  for (const auto& s : set.samples)
    if (s.status == SampleStatus::ok) ++set.n_ok;
  if (set.n_ok == 0) throw std::runtime_error("draw_samples: all samples failed");
  return set;
}

double empirical_cdf(const QoiSampleSet& set, double t) {
  if (set.n_ok == 0) throw std::invalid_argument("empirical_cdf: empty sample set");
  int count = 0;
  for (const auto& s : set.samples)
    if (s.status == SampleStatus::ok && s.q_hat <= t) ++count;
  return static_cast<double>(count) / set.n_ok;
}

StepCdf::StepCdf(std::vector<double> sorted_values) : values_(std::move(sorted_values)) {
  if (values_.empty()) throw std::invalid_argument("StepCdf: empty sample set");
  std::sort(values_.begin(), values_.end());
}

double StepCdf::operator()(double t) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), t);
  return static_cast<double>(it - values_.begin()) / values_.size();
}

StepCdf nominal_cdf(const std::string& family, const std::vector<ParameterDistribution>& dists,
                    const ThresholdSpec& spec, int n_nom, std::uint64_t seed, double tol) {
  if (n_nom < 1) throw std::invalid_argument("nominal_cdf: need n_nom >= 1");
  for (const auto& d : dists) d.validate();
  const CounterRng rng(seed);
  std::vector<double> values;
  values.reserve(n_nom);
  for (int n = 0; n < n_nom; ++n) {
    const auto theta = draw_theta(rng, dists, n);
    try {
      auto [problem, unused] = builtin(family, theta_params(dists, theta));
      (void)unused;
      values.push_back(problem.analytic ? analytic_qoi(problem, spec)
                                        : reference_qoi(problem, spec, tol));
    } catch (const NoCrossingError&) {
      // skipped, mirroring draw_samples
    }
  }
  return StepCdf(std::move(values));
}

CdfBoundCurve cdf_error_bound(const QoiSampleSet& set, double epsilon,
                              const std::vector<double>& t_grid) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("cdf_error_bound: epsilon must lie in (0,1)");
  if (set.n_ok == 0) throw std::invalid_argument("cdf_error_bound: empty sample set");

  const double n = static_cast<double>(set.n_ok);
  const double remainder = 2.0 / std::pow(2.0 * n * epsilon, 0.75);
  const double disc_factor = 1.0 / n + 1.0 / (n * std::sqrt(epsilon));

  CdfBoundCurve curve;
  curve.epsilon = epsilon;
  curve.t_grid = t_grid;
  curve.f_hat.reserve(t_grid.size());
  for (double t : t_grid) {
    int below = 0, covered = 0;
    for (const auto& s : set.samples) {
      if (s.status != SampleStatus::ok) continue;
      if (s.q_hat <= t) ++below;
      const double e = std::abs(s.eta);
      if (s.q_hat - e <= t && t <= s.q_hat + e) ++covered;
    }
    const double f = below / n;
    const double sampling = std::sqrt(f * (1.0 - f) / (n * epsilon));
    const double disc = disc_factor * covered;
    curve.f_hat.push_back(f);
    curve.sampling_term.push_back(sampling);
    curve.discretization_term.push_back(disc);
    curve.remainder_term.push_back(remainder);
    curve.total_bound.push_back(sampling + disc + remainder);
  }
  return curve;
}

std::vector<double> default_t_grid(const QoiSampleSet& set, int n) {
  if (n < 2) throw std::invalid_argument("default_t_grid: need n >= 2");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double emax = 0.0;
  for (const auto& s : set.samples) {
    if (s.status != SampleStatus::ok) continue;
    lo = std::min(lo, s.q_hat);
    hi = std::max(hi, s.q_hat);
    emax = std::max(emax, std::abs(s.eta));
  }
  std::vector<double> grid(n);
  const double a = lo - emax, b = hi + emax;
  for (int i = 0; i < n; ++i) grid[i] = a + (b - a) * i / (n - 1);
  return grid;
}

}  // namespace crosstime
