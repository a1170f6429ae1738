#include "crosstime/config.hpp"

#include <fstream>
#include <sstream>

#include "crosstime/csv.hpp"

namespace crosstime {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value '" + value + "' for key '" + key + "'");
  }
}

int to_int(const std::string& key, const std::string& value) {
  const double x = to_double(key, value);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    throw ConfigError("config: expected integer for key '" + key + "'");
  return i;
}

EstimateMethod parse_method(const std::string& name) {
  if (name == "taylor") return EstimateMethod::taylor;
  if (name == "secant") return EstimateMethod::secant;
  if (name == "inverse_quadratic") return EstimateMethod::inverse_quadratic;
  throw ConfigError("config: unknown estimator '" + name + "'");
}

ParameterDistribution parse_dist(const std::string& target, const std::string& value) {
  const auto parts = split(value, ':');
  if (parts.size() != 3) throw ConfigError("config: distribution '" + value +
                                           "' must be kind:a:b");
  ParameterDistribution d;
  d.target = target;
  if (parts[0] == "normal") d.kind = ParameterDistribution::Kind::normal;
  else if (parts[0] == "uniform") d.kind = ParameterDistribution::Kind::uniform;
  else throw ConfigError("config: unknown distribution kind '" + parts[0] + "'");
  d.a = to_double("uq.dist." + target, parts[1]);
  d.b = to_double("uq.dist." + target, parts[2]);
  d.validate();
  return d;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (problem_name.empty()) throw ConfigError("config: problem.name is required");
  if (estimators.empty()) throw ConfigError("config: at least one estimator must be selected");
  if (scheme == SchemeKind::crank_nicolson && q != 1)
    throw ConfigError("config: crank_nicolson requires q = 1");
  if (q < 1) throw ConfigError("config: scheme.q must be >= 1");
  if (n_elements < 1) throw ConfigError("config: mesh.n_elements must be >= 1");
  if (adjoint.degree < 1 || adjoint.n_elements < 1 || adjoint.quad_points < 1)
    throw ConfigError("config: invalid adjoint block");
  if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
  if (uq) {
    if (uq->n < 1 || uq->n_nom < 1) throw ConfigError("config: uq sample counts must be >= 1");
    if (!(uq->epsilon > 0.0 && uq->epsilon < 1.0))
      throw ConfigError("config: uq.epsilon must lie in (0,1)");
    if (uq->t_grid_points < 2) throw ConfigError("config: uq.t_grid_points must be >= 2");
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  cfg.config_hash = fnv1a64(text);
  bool have_uq = false;
  UqBlock uq;

  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));

    if (key == "problem.name") cfg.problem_name = value;
    else if (key.rfind("problem.param.", 0) == 0)
      cfg.params[key.substr(14)] = to_double(key, value);
    else if (key == "threshold.R") cfg.params["R"] = to_double(key, value);
    else if (key == "scheme.kind") {
      if (value == "cg") cfg.scheme = SchemeKind::cg;
      else if (value == "crank_nicolson") cfg.scheme = SchemeKind::crank_nicolson;
      else throw ConfigError("config: unknown scheme.kind '" + value + "'");
    } else if (key == "scheme.q") cfg.q = to_int(key, value);
    else if (key == "mesh.n_elements") cfg.n_elements = to_int(key, value);
    else if (key == "solver.quad_points") cfg.quad_points = to_int(key, value);
    else if (key == "adjoint.q") cfg.adjoint.degree = to_int(key, value);
    else if (key == "adjoint.n_elements") cfg.adjoint.n_elements = to_int(key, value);
    else if (key == "adjoint.quad") cfg.adjoint.quad_points = to_int(key, value);
    else if (key == "estimators") {
      for (const auto& name : split(value, ','))
        if (!name.empty()) cfg.estimators.push_back(parse_method(name));
    } else if (key == "sweep.R") {
      for (const auto& r : split(value, ','))
        if (!r.empty()) cfg.sweep_r.push_back(to_double(key, r));
    } else if (key == "converge.meshes") {
      for (const auto& n : split(value, ','))
        if (!n.empty()) cfg.converge_meshes.push_back(to_int(key, n));
    } else if (key == "uq.N") { uq.n = to_int(key, value); have_uq = true; }
    else if (key == "uq.N_nom") { uq.n_nom = to_int(key, value); have_uq = true; }
    else if (key == "uq.epsilon") { uq.epsilon = to_double(key, value); have_uq = true; }
    else if (key == "uq.seed") { uq.seed = static_cast<std::uint64_t>(to_double(key, value)); have_uq = true; }
    else if (key == "uq.t_grid_points") { uq.t_grid_points = to_int(key, value); have_uq = true; }
    else if (key == "uq.nominal_tol") { uq.nominal_tol = to_double(key, value); have_uq = true; }
    else if (key.rfind("uq.dist.", 0) == 0) {
      uq.dists.push_back(parse_dist(key.substr(8), value));
      have_uq = true;
    } else if (key == "output.stem") cfg.output_stem = value;
    else if (key == "output.solution_samples") cfg.solution_samples = to_int(key, value);
    else if (key == "jobs") cfg.jobs = to_int(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
  }

  if (have_uq) cfg.uq = uq;
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace crosstime
