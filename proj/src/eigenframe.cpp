#include "unitransform/eigenframe.hpp"

#include <cmath>
#include <numbers>

#include "unitransform/errors.hpp"

namespace unitransform {

namespace {

constexpr Complex kI{0.0, 1.0};

std::int64_t periodic_index(const EigenProblemSpec& problem, const Eigenvalue& ev) {
  if (ev.spectrum != SpectrumKind::discrete || ev.second) {
    throw ContractViolation("periodic-interval problem needs a discrete eigenvalue");
  }
  if (ev.index) return *ev.index;
  const double L = problem.half_length();
  const double k = std::round(ev.value * L / std::numbers::pi);
  if (std::abs(ev.value - k * std::numbers::pi / L) > 1e-9 * std::max(1.0, std::abs(ev.value))) {
    throw ContractViolation("lambda is not of the form k pi / L for the periodic problem");
  }
  return static_cast<std::int64_t>(k);
}

void require_one_dimensional_continuum(const Eigenvalue& ev) {
  if (ev.spectrum != SpectrumKind::continuum || ev.second) {
    throw ContractViolation("problem needs a one-parameter continuum eigenvalue");
  }
}

// d/dx y = factor * y for every 1-D problem.
Complex derivative_factor(const EigenProblemSpec& problem, const Eigenvalue& ev) {
  switch (problem.kind()) {
    case ProblemKind::periodic_interval:
    case ProblemKind::whole_line:
      return Complex{0.0, -ev.value};
    case ProblemKind::weighted_halfline:
      return Complex{problem.sigma(), -ev.value};
    case ProblemKind::product_2d:
      break;
  }
  throw ContractViolation("product-2d eigenfunctions take (x, t)");
}

}  // namespace

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::periodic_interval: return "periodic-interval";
    case ProblemKind::whole_line: return "whole-line";
    case ProblemKind::weighted_halfline: return "weighted-halfline";
    case ProblemKind::product_2d: return "product-2d";
  }
  return "unknown";
}

EigenProblemSpec EigenProblemSpec::periodic(double half_length) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw ContractViolation("periodic problem needs L > 0");
  }
  return {ProblemKind::periodic_interval, half_length, 0.0};
}

EigenProblemSpec EigenProblemSpec::whole_line() { return {ProblemKind::whole_line, 0.0, 0.0}; }

EigenProblemSpec EigenProblemSpec::weighted_halfline(double sigma) {
  if (!std::isfinite(sigma)) throw ContractViolation("sigma must be finite");
  return {ProblemKind::weighted_halfline, 0.0, sigma};
}

EigenProblemSpec EigenProblemSpec::product_2d(double sigma) {
  if (!std::isfinite(sigma)) throw ContractViolation("sigma must be finite");
  return {ProblemKind::product_2d, 0.0, sigma};
}

Eigenvalue Eigenvalue::discrete(std::int64_t k, double half_length) {
  return Eigenvalue{static_cast<double>(k) * std::numbers::pi / half_length, std::nullopt,
                    SpectrumKind::discrete, k};
}

Eigenvalue Eigenvalue::continuum(double lambda) {
  return Eigenvalue{lambda, std::nullopt, SpectrumKind::continuum, std::nullopt};
}

Eigenvalue Eigenvalue::continuum(double lambda, double mu) {
  return Eigenvalue{lambda, mu, SpectrumKind::continuum, std::nullopt};
}

std::vector<Eigenvalue> discrete_eigenvalues(double half_length, std::int64_t k_max) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw ContractViolation("discrete eigenvalues need L > 0");
  }
  if (k_max < 0) throw ContractViolation("k_max must be nonnegative");
  std::vector<Eigenvalue> out;
  out.reserve(static_cast<std::size_t>(2 * k_max + 1));
  for (std::int64_t k = -k_max; k <= k_max; ++k) out.push_back(Eigenvalue::discrete(k, half_length));
  return out;
}

Complex eigenfunction_eval(const EigenProblemSpec& problem, const Eigenvalue& ev, double x) {
  switch (problem.kind()) {
    case ProblemKind::periodic_interval: {
      const auto k = periodic_index(problem, ev);
      return unit_phase_pi(-static_cast<double>(k) * (x / problem.half_length()));
    }
    case ProblemKind::whole_line:
      require_one_dimensional_continuum(ev);
      return std::polar(1.0, -ev.value * x);
    case ProblemKind::weighted_halfline:
      require_one_dimensional_continuum(ev);
      return std::exp(Complex{problem.sigma() * x, -ev.value * x});
    case ProblemKind::product_2d:
      break;
  }
  throw ContractViolation("product-2d eigenfunctions take (x, t)");
}

Complex eigenfunction_eval(const EigenProblemSpec& problem, const Eigenvalue& ev, double x,
                           double t) {
  if (problem.kind() != ProblemKind::product_2d) {
    throw ContractViolation("(x, t) evaluation needs the product-2d problem");
  }
  if (!ev.second || ev.spectrum != SpectrumKind::continuum) {
    throw ContractViolation("product-2d problem needs a continuum eigenvalue pair (lambda, mu)");
  }
  return std::exp(Complex{problem.sigma() * t, -ev.value * x - *ev.second * t});
}

Complex eigenfunction_derivative(const EigenProblemSpec& problem, const Eigenvalue& ev, double x,
                                 int order) {
  if (order < 0 || order > 2) throw ContractViolation("derivative order must be 0, 1 or 2");
  const Complex y = eigenfunction_eval(problem, ev, x);
  const Complex factor = derivative_factor(problem, ev);
  if (order == 0) return y;
  if (order == 1) return factor * y;
  return (factor * factor) * y;
}

double WindowedTestSequence::window(double x) const {
  const double u = x / n;
  return std::exp(-0.5 * u * u);
}

double WindowedTestSequence::window_derivative(double x) const {
  const double u = x / n;
  return -u * std::exp(-0.5 * u * u) / n;
}

double residual_ratio(const EigenProblemSpec& problem, double lambda,
                      const WindowedTestSequence& seq, const QuadratureSpec& spec) {
  if (seq.n < 1) throw ContractViolation("window index n must be at least 1");
  const double reach = 8.0 * seq.n;

  if (problem.kind() == ProblemKind::whole_line) {
    // y_n = e^{-i lambda x} w(x/n);  (M - lambda) y_n = i y_n' - lambda y_n.
    auto y = [&](double x) { return std::polar(1.0, -lambda * x) * seq.window(x); };
    auto dy = [&](double x) {
      const Complex phase = std::polar(1.0, -lambda * x);
      return Complex{0.0, -lambda} * phase * seq.window(x) + phase * seq.window_derivative(x);
    };
    const Complex num = integrate(
        [&](double x) { return Complex{std::norm(kI * dy(x) - lambda * y(x)), 0.0}; }, -reach,
        reach, spec);
    const Complex den =
        integrate([&](double x) { return Complex{std::norm(y(x)), 0.0}; }, -reach, reach, spec);
    return std::sqrt(num.real() / den.real());
  }

  if (problem.kind() == ProblemKind::weighted_halfline) {
    // y_n = e^{(sigma - i lambda) x} w(x/n);  (M - lambda) y_n = i (y_n' - sigma y_n) - lambda y_n,
    // norms weighted by e^{-2 sigma x} on [0, 8n].
    const double sigma = problem.sigma();
    const Complex rate{sigma, -lambda};
    auto base = [&](double x) { return std::exp(rate * x); };
    auto y = [&](double x) { return base(x) * seq.window(x); };
    auto dy = [&](double x) {
      const Complex e = base(x);
      return rate * e * seq.window(x) + e * seq.window_derivative(x);
    };
    auto weight = [&](double x) { return std::exp(-2.0 * sigma * x); };
    const Complex num = integrate(
        [&](double x) {
          return Complex{weight(x) * std::norm(kI * (dy(x) - sigma * y(x)) - lambda * y(x)), 0.0};
        },
        0.0, reach, spec);
    const Complex den = integrate(
        [&](double x) { return Complex{weight(x) * std::norm(y(x)), 0.0}; }, 0.0, reach, spec);
    return std::sqrt(num.real() / den.real());
  }

  throw ContractViolation("residual_ratio needs the whole-line or weighted-halfline problem");
}

SturmLiouvilleReport sl_residual(double half_length, std::int64_t k, const Grid& x_grid) {
  const auto problem = EigenProblemSpec::periodic(half_length);
  const auto ev = Eigenvalue::discrete(k, half_length);
  const double lambda_sq = ev.value * ev.value;

  SturmLiouvilleReport report;
  for (double x : x_grid.points()) {
    const Complex y = eigenfunction_derivative(problem, ev, x, 0);
    const Complex y2 = eigenfunction_derivative(problem, ev, x, 2);
    report.max_residual = std::max(report.max_residual, std::abs(-y2 - lambda_sq * y));
  }
  report.value_at_left = eigenfunction_derivative(problem, ev, -half_length, 0);
  report.value_at_right = eigenfunction_derivative(problem, ev, half_length, 0);
  report.derivative_at_left = eigenfunction_derivative(problem, ev, -half_length, 1);
  report.derivative_at_right = eigenfunction_derivative(problem, ev, half_length, 1);
  report.boundary_conditions_hold = report.value_at_left == report.value_at_right &&
                                    report.derivative_at_left == report.derivative_at_right;
  return report;
}

double first_order_residual(double half_length, std::int64_t k, const Grid& x_grid) {
  const auto problem = EigenProblemSpec::periodic(half_length);
  const auto ev = Eigenvalue::discrete(k, half_length);
  double worst = 0.0;
  for (double x : x_grid.points()) {
    const Complex y = eigenfunction_derivative(problem, ev, x, 0);
    const Complex dy = eigenfunction_derivative(problem, ev, x, 1);
    worst = std::max(worst, std::abs(kI * dy - ev.value * y));
  }
  return worst;
}

}  // namespace unitransform
