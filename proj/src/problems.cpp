#include "crosstime/problems.hpp"

#include <cmath>
#include <set>

namespace crosstime {

namespace {

constexpr double kPi = 3.14159265358979323846;

double get_param(const ParamMap& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void check_known_keys(const std::string& name, const ParamMap& params,
                      const std::set<std::string>& known) {
  for (const auto& [key, value] : params) {
    (void)value;
    if (!known.count(key))
      throw std::invalid_argument("builtin: unknown parameter '" + key + "' for problem '" +
                                  name + "'");
  }
}

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

// y' = a sin(2 pi t) y, y(0) = 1; solution exp(a (1 - cos 2 pi t) / 2 pi).
std::pair<OdeProblem, ThresholdSpec> make_linear_scalar(const ParamMap& params) {
  check_known_keys("linear_scalar", params, {"a", "R"});
  const double a = get_param(params, "a", 1.0);
  OdeProblem p;
  p.dim = 1;
  p.t0 = 0.0;
  p.T = 1.0;
  p.y0 = vec1(1.0);
  p.label = "linear_scalar";
  p.rhs = [a](const Vector& y, double t) { return Vector(a * std::sin(2.0 * kPi * t) * y); };
  p.jacobian = [a](const Vector&, double t) {
    Matrix j(1, 1);
    j(0, 0) = a * std::sin(2.0 * kPi * t);
    return j;
  };
  p.analytic = [a](double t) {
    return vec1(std::exp(a * (1.0 - std::cos(2.0 * kPi * t)) / (2.0 * kPi)));
  };
  return {p, ThresholdSpec(vec1(1.0), get_param(params, "R", 1.3))};
}

// y' = sin(2 pi y), y(0) = 1/4; solution arctan(exp(2 pi t)) / pi.
std::pair<OdeProblem, ThresholdSpec> make_nonlinear_scalar(const ParamMap& params) {
  check_known_keys("nonlinear_scalar", params, {"R"});
  OdeProblem p;
  p.dim = 1;
  p.t0 = 0.0;
  p.T = 1.0;
  p.y0 = vec1(0.25);
  p.label = "nonlinear_scalar";
  p.rhs = [](const Vector& y, double) { return Vector(vec1(std::sin(2.0 * kPi * y(0)))); };
  p.jacobian = [](const Vector& y, double) {
    Matrix j(1, 1);
    j(0, 0) = 2.0 * kPi * std::cos(2.0 * kPi * y(0));
    return j;
  };
  p.analytic = [](double t) { return vec1(std::atan(std::exp(2.0 * kPi * t)) / kPi); };
  return {p, ThresholdSpec(vec1(1.0), get_param(params, "R", 0.4))};
}

// Two-dimensional nonautonomous system y' + A(t) y = 0 with known solution.
std::pair<OdeProblem, ThresholdSpec> make_linear_system(const ParamMap& params) {
  check_known_keys("linear_system", params, {"R"});
  auto a_of_t = [](double t) {
    Matrix a(2, 2);
    const double c = std::cos(6.0 * t), s12 = std::sin(12.0 * t), s = std::sin(6.0 * t);
    a(0, 0) = 1.0 + 9.0 * c * c - 6.0 * s12;
    a(0, 1) = -12.0 * c * c - 4.5 * s12;
    a(1, 0) = 12.0 * s * s - 4.5 * s12;
    a(1, 1) = 1.0 + 9.0 * s * s + 6.0 * s12;
    return a;
  };
  OdeProblem p;
  p.dim = 2;
  p.t0 = 0.0;
  p.T = 1.0;
  p.y0 = Vector(2);
  p.y0 << 1.0, 1.0;
  p.label = "linear_system";
  p.rhs = [a_of_t](const Vector& y, double t) { return Vector(-(a_of_t(t) * y)); };
  p.jacobian = [a_of_t](const Vector&, double t) { return Matrix(-a_of_t(t)); };
  p.analytic = [](double t) {
    Vector y(2);
    const double c = std::cos(6.0 * t), s = std::sin(6.0 * t);
    const double e1 = std::exp(2.0 * t), e2 = std::exp(-13.0 * t);
    y(0) = 0.6 * e1 * (c + 2.0 * s) - 0.2 * e2 * (s - 2.0 * c);
    y(1) = 0.6 * e1 * (2.0 * c - s) - 0.2 * e2 * (c + 2.0 * s);
    return y;
  };
  Vector v(2);
  v << 1.0, 0.0;
  return {p, ThresholdSpec(v, get_param(params, "R", 0.0))};
}

// Damped driven oscillator m w'' + c w' + k w = F0 cos(gamma t + theta_d)
// as a first-order system, with the underdamped closed form attached.
std::pair<OdeProblem, ThresholdSpec> make_harmonic(const ParamMap& params, bool shifted) {
  check_known_keys(shifted ? "harmonic_shifted" : "harmonic", params,
                   {"k", "m", "c", "F0", "gamma", "theta_d", "R"});
  const double k = get_param(params, "k", 50.0);
  const double m = get_param(params, "m", 0.25);
  const double c = get_param(params, "c", 1.0);
  const double F0 = get_param(params, "F0", 50.0);
  const double gamma = get_param(params, "gamma", 10.0);
  const double theta_d = get_param(params, "theta_d", 0.0);
  if (m <= 0.0) throw std::invalid_argument("harmonic: mass m must be positive");
  if (k <= 0.0) throw std::invalid_argument("harmonic: stiffness k must be positive");
  if (c < 0.0) throw std::invalid_argument("harmonic: damping c must be nonnegative");

  OdeProblem p;
  p.dim = 2;
  p.label = shifted ? "harmonic_shifted" : "harmonic";
  p.rhs = [k, m, c, F0, gamma, theta_d](const Vector& y, double t) {
    Vector f(2);
    f(0) = y(1);
    f(1) = -(k / m) * y(0) - (c / m) * y(1) + (F0 / m) * std::cos(gamma * t + theta_d);
    return f;
  };
  p.jacobian = [k, m, c](const Vector&, double) {
    Matrix j(2, 2);
    j << 0.0, 1.0, -(k / m), -(c / m);
    return j;
  };

  const double disc = 4.0 * m * k - c * c;
  if (disc > 0.0) {
    const double alpha = c / (2.0 * m);
    const double beta = std::sqrt(disc) / (2.0 * m);
    const double den = (k - m * gamma * gamma) * (k - m * gamma * gamma) + c * c * gamma * gamma;
    const double amp = F0 / std::sqrt(den);
    const double phi = std::atan2(c * gamma, k - m * gamma * gamma);
    const double w0 = 5.0, v0 = 0.0;
    const double c1 = w0 - amp * std::cos(theta_d - phi);
    const double c2 = (v0 + alpha * c1 + amp * gamma * std::sin(theta_d - phi)) / beta;
    p.analytic = [alpha, beta, amp, gamma, theta_d, phi, c1, c2](double t) {
      Vector y(2);
      const double e = std::exp(-alpha * t);
      const double cb = std::cos(beta * t), sb = std::sin(beta * t);
      y(0) = e * (c1 * cb + c2 * sb) + amp * std::cos(gamma * t + theta_d - phi);
      y(1) = e * ((-alpha * c1 + beta * c2) * cb + (-alpha * c2 - beta * c1) * sb) -
             amp * gamma * std::sin(gamma * t + theta_d - phi);
      return y;
    };
  }

  if (shifted) {
    if (!p.analytic)
      throw std::invalid_argument("harmonic_shifted: requires the underdamped closed form");
    p.t0 = 0.2;
    p.T = 2.0;
    p.y0 = (*p.analytic)(0.2);
  } else {
    p.t0 = 0.0;
    p.T = 2.0;
    p.y0 = Vector(2);
    p.y0 << 5.0, 0.0;
  }

  Vector v(2);
  v << 1.0, 0.0;
  return {p, ThresholdSpec(v, get_param(params, "R", shifted ? 1.8 : 0.0))};
}

// Method-of-lines heat equation: n interior nodes of u_t = u_xx + 3 e^t sin(pi x)
// on (0,1) with homogeneous Dirichlet data. The forcing excites only the first
// discrete Fourier mode, so the exact solution is a single-mode expression.
std::pair<OdeProblem, ThresholdSpec> make_heat(const ParamMap& params) {
  check_known_keys("heat_semidiscrete", params, {"n_interior", "R"});
  const double n_raw = get_param(params, "n_interior", 20.0);
  const int n = static_cast<int>(n_raw);
  if (n < 1 || static_cast<double>(n) != n_raw)
    throw std::invalid_argument("heat_semidiscrete: n_interior must be a positive integer");
  const double h = 1.0 / (n + 1);

  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = -2.0 / (h * h);
    if (i > 0) a(i, i - 1) = 1.0 / (h * h);
    if (i + 1 < n) a(i, i + 1) = 1.0 / (h * h);
  }
  Vector mode(n);
  for (int i = 0; i < n; ++i) mode(i) = std::sin(kPi * (i + 1) * h);

  OdeProblem p;
  p.dim = n;
  p.t0 = 0.0;
  p.T = 1.0;
  p.y0 = Vector::Zero(n);
  p.label = "heat_semidiscrete";
  p.rhs = [a, mode](const Vector& y, double t) {
    return Vector(a * y + 3.0 * std::exp(t) * mode);
  };
  p.jacobian = [a](const Vector&, double) { return a; };

  const double lambda1 = (2.0 * std::cos(kPi * h) - 2.0) / (h * h);
  p.analytic = [mode, lambda1](double t) {
    const double amp = 3.0 * (std::exp(t) - std::exp(lambda1 * t)) / (1.0 - lambda1);
    return Vector(amp * mode);
  };

  Vector v = Vector::Constant(n, 1.0 / n);
  return {p, ThresholdSpec(v, get_param(params, "R", 0.33))};
}

// Planar Kepler orbit with eccentricity 0.6; closed form through the Kepler equation.
std::pair<OdeProblem, ThresholdSpec> make_two_body(const ParamMap& params) {
  check_known_keys("two_body", params, {"R"});
  OdeProblem p;
  p.dim = 4;
  p.t0 = 0.0;
  p.T = 1.5;
  p.y0 = Vector(4);
  p.y0 << 0.4, 0.0, 0.0, 2.0;
  p.label = "two_body";
  p.rhs = [](const Vector& y, double) {
    Vector f(4);
    const double r2 = y(0) * y(0) + y(1) * y(1);
    const double r3 = std::pow(r2, 1.5);
    f(0) = y(2);
    f(1) = y(3);
    f(2) = -y(0) / r3;
    f(3) = -y(1) / r3;
    return f;
  };
  p.jacobian = [](const Vector& y, double) {
    Matrix j = Matrix::Zero(4, 4);
    const double r2 = y(0) * y(0) + y(1) * y(1);
    const double r5 = std::pow(r2, 2.5);
    j(0, 2) = 1.0;
    j(1, 3) = 1.0;
    j(2, 0) = (2.0 * y(0) * y(0) - y(1) * y(1)) / r5;
    j(2, 1) = 3.0 * y(0) * y(1) / r5;
    j(3, 0) = 3.0 * y(0) * y(1) / r5;
    j(3, 1) = (2.0 * y(1) * y(1) - y(0) * y(0)) / r5;
    return j;
  };
  p.analytic = [](double t) {
    // Kepler equation E - 0.6 sin E = t
    double e = t;
    for (int it = 0; it < 50; ++it) {
      const double g = e - 0.6 * std::sin(e) - t;
      const double dg = 1.0 - 0.6 * std::cos(e);
      const double de = g / dg;
      e -= de;
      if (std::abs(de) < 1e-15) break;
    }
    Vector y(4);
    const double ce = std::cos(e), se = std::sin(e);
    y(0) = ce - 0.6;
    y(1) = 0.8 * se;
    y(2) = -se / (1.0 - 0.6 * ce);
    y(3) = 0.8 * ce / (1.0 - 0.6 * ce);
    return y;
  };
  Vector v(4);
  v << 1.0, 1.0, 0.0, 0.0;
  return {p, ThresholdSpec(v, get_param(params, "R", 0.0))};
}

// Logistic growth y' = k y (1 - y/K), y(0) = 1/2, on (0, 25].
std::pair<OdeProblem, ThresholdSpec> make_logistic(const ParamMap& params) {
  check_known_keys("logistic", params, {"k", "K", "R"});
  const double k = get_param(params, "k", 0.25);
  const double cap = get_param(params, "K", 1.0);
  if (k <= 0.0) throw std::invalid_argument("logistic: growth rate k must be positive");
  if (cap <= 0.0) throw std::invalid_argument("logistic: capacity K must be positive");
  OdeProblem p;
  p.dim = 1;
  p.t0 = 0.0;
  p.T = 25.0;
  p.y0 = vec1(0.5);
  p.label = "logistic";
  p.rhs = [k, cap](const Vector& y, double) {
    return Vector(vec1(k * y(0) * (1.0 - y(0) / cap)));
  };
  p.jacobian = [k, cap](const Vector& y, double) {
    Matrix j(1, 1);
    j(0, 0) = k - 2.0 * k * y(0) / cap;
    return j;
  };
  const double y0 = 0.5;
  p.analytic = [k, cap, y0](double t) {
    return vec1(cap * y0 / (y0 + (cap - y0) * std::exp(-k * t)));
  };
  return {p, ThresholdSpec(vec1(1.0), get_param(params, "R", 0.55))};
}

// Lorenz system on (0, 3] with y(0) = (y1_0, 0, 24); no closed form.
std::pair<OdeProblem, ThresholdSpec> make_lorenz(const ParamMap& params) {
  check_known_keys("lorenz", params, {"sigma", "r", "b", "y1_0", "R"});
  const double sigma = get_param(params, "sigma", 10.0);
  const double r = get_param(params, "r", 28.0);
  const double b = get_param(params, "b", 8.0 / 3.0);
  const double y1_0 = get_param(params, "y1_0", 1.0);
  if (sigma <= 0.0) throw std::invalid_argument("lorenz: sigma must be positive");
  if (b <= 0.0) throw std::invalid_argument("lorenz: b must be positive");
  OdeProblem p;
  p.dim = 3;
  p.t0 = 0.0;
  p.T = 3.0;
  p.y0 = Vector(3);
  p.y0 << y1_0, 0.0, 24.0;
  p.label = "lorenz";
  p.rhs = [sigma, r, b](const Vector& y, double) {
    Vector f(3);
    f(0) = sigma * (y(1) - y(0));
    f(1) = r * y(0) - y(1) - y(0) * y(2);
    f(2) = y(0) * y(1) - b * y(2);
    return f;
  };
  p.jacobian = [sigma, r, b](const Vector& y, double) {
    Matrix j(3, 3);
    j << -sigma, sigma, 0.0,
         r - y(2), -1.0, -y(0),
         y(1), y(0), -b;
    return j;
  };
  Vector v(3);
  v << 1.0, 0.0, 0.0;
  return {p, ThresholdSpec(v, get_param(params, "R", -10.0))};
}

}  // namespace

std::pair<OdeProblem, ThresholdSpec> builtin(const std::string& name, const ParamMap& params) {
  std::pair<OdeProblem, ThresholdSpec> out;
  if (name == "linear_scalar") out = make_linear_scalar(params);
  else if (name == "nonlinear_scalar") out = make_nonlinear_scalar(params);
  else if (name == "linear_system") out = make_linear_system(params);
  else if (name == "harmonic") out = make_harmonic(params, false);
  else if (name == "harmonic_shifted") out = make_harmonic(params, true);
  else if (name == "heat_semidiscrete") out = make_heat(params);
  else if (name == "two_body") out = make_two_body(params);
  else if (name == "logistic") out = make_logistic(params);
  else if (name == "lorenz") out = make_lorenz(params);
  else throw std::invalid_argument("builtin: unknown problem '" + name + "'");
  out.first.validate();
  if (out.second.v.size() != out.first.dim)
    throw std::invalid_argument("builtin: threshold weight has wrong dimension");
  return out;
}

double analytic_qoi(const OdeProblem& problem, const ThresholdSpec& spec) {
  if (!problem.analytic)
    throw std::invalid_argument("analytic_qoi: no closed-form solution for '" + problem.label +
                                "'");
  const auto& y = *problem.analytic;
  auto s = [&](double t) { return spec.v.dot(y(t)) - spec.R; };

  // scan for the first sign change, then polish
  const int n_scan = 4000;
  const double width = (problem.T - problem.t0) / n_scan;
  double ta = problem.t0, fa = s(ta);
  if (fa == 0.0) ta = std::nextafter(ta, problem.T), fa = s(ta);
  for (int i = 1; i <= n_scan; ++i) {
    double tb = (i == n_scan) ? problem.T : problem.t0 + i * width;
    double fb = s(tb);
    if (fa * fb <= 0.0 && (fa != 0.0 || fb != 0.0)) {
      for (int it = 0; it < 200; ++it) {
        double tm = 0.5 * (ta + tb);
        double fm = s(tm);
        if (fa * fm <= 0.0) { tb = tm; fb = fm; }
        else { ta = tm; fa = fm; }
        if (tb - ta < 1e-15 * (1.0 + std::abs(tb))) break;
      }
      // one guarded Newton polish using a centered difference slope
      double t = 0.5 * (ta + tb);
      const double dt = 1e-7 * (1.0 + std::abs(t));
      const double slope = (s(t + dt) - s(t - dt)) / (2.0 * dt);
      if (slope != 0.0) {
        double t_new = t - s(t) / slope;
        if (t_new > ta - (tb - ta) && t_new < tb + (tb - ta)) t = t_new;
      }
      return t;
    }
    ta = tb;
    fa = fb;
  }
  throw NoCrossingError("analytic_qoi: threshold never reached on (t0, T] for '" +
                        problem.label + "'");
}

double analytic_qoi(const std::string& name, const ThresholdSpec& spec) {
  auto [problem, unused] = builtin(name);
  (void)unused;
  return analytic_qoi(problem, spec);
}

}  // namespace crosstime
