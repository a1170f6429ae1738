#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crosstime/config.hpp"

namespace crosstime {

/// One table row produced by the estimate command; on a per-row failure the
/// report is absent and `error` carries the reason.
struct EstimateRow {
  EstimateMethod method;
  std::optional<EstimateReport> report;
  std::optional<double> t_ll, t_l, t_r;
  std::string error;
};

struct EstimateRun {
  std::optional<double> t_true;
  std::vector<EstimateRow> rows;
};

struct SweepCell {
  double R = 0.0;
  EstimateMethod method;
  std::optional<double> rho;
  std::string text;  // formatted rho, or "fail"
};

struct SweepRun {
  std::vector<double> r_values;
  std::vector<SweepCell> cells;  // method-major, R-minor
};

struct CdfRun {
  QoiSampleSet set;
  std::vector<double> t_grid;
  CdfBoundCurve curve;
  std::vector<double> f_nominal;
  std::vector<double> true_err;  // |f_nominal - f_hat|
};

/// Experiment drivers behind the CLI subcommands. out_dir may be empty to
/// skip file output; all emitted CSVs carry a metadata line with the config
/// hash, seed, and generator name, and rerunning a config reproduces the
/// files byte for byte.
EstimateRun run_estimate(const ExperimentConfig& cfg, const std::string& out_dir);
SweepRun run_sweep_r(const ExperimentConfig& cfg, const std::string& out_dir);
ConvergenceTable run_converge(const ExperimentConfig& cfg, const std::string& out_dir);
CdfRun run_cdf(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace crosstime
