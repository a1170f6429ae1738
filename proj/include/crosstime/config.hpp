#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crosstime/adjoint.hpp"
#include "crosstime/estimators.hpp"
#include "crosstime/uq.hpp"

namespace crosstime {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SchemeKind { cg, crank_nicolson };

struct UqBlock {
  std::vector<ParameterDistribution> dists;
  int n = 100;
  int n_nom = 1000;
  double epsilon = 0.05;
  std::uint64_t seed = 1;
  int t_grid_points = 400;
  double nominal_tol = 1e-8;
};

/// One experiment: problem instance, forward scheme, adjoint discretization,
/// estimator selection, and the optional sweep / convergence / sampling blocks.
struct ExperimentConfig {
  std::string problem_name;
  ParamMap params;                     // problem.param.<key> entries, R override included
  SchemeKind scheme = SchemeKind::cg;
  int q = 1;
  int n_elements = 40;
  int quad_points = 0;                 // 0 = solver default
  AdjointConfig adjoint;
  std::vector<EstimateMethod> estimators;
  std::vector<double> sweep_r;
  std::vector<int> converge_meshes;
  std::optional<UqBlock> uq;
  std::string output_stem = "out";
  int solution_samples = 0;
  int jobs = 1;
  std::uint64_t config_hash = 0;

  void validate() const;
};

/// Parses the flat key=value format with dotted keys. Lines starting with '#'
/// and blank lines are skipped.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace crosstime
