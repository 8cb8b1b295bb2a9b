#include "unitransform/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "unitransform/eigenframe.hpp"
#include "unitransform/errors.hpp"
#include "unitransform/fourier_transform.hpp"

namespace unitransform {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ContractViolation("inversion time t must be positive");
}

// p = sigma - 1 keeps the reference pole strictly left of the contour.
double reference_pole(double sigma) { return sigma - 1.0; }

}  // namespace

LaplaceSpectrum::LaplaceSpectrum(double sigma, Grid tau_grid, std::vector<Complex> values)
    : sigma_(sigma), tau_grid_(std::move(tau_grid)), values_(std::move(values)) {
  if (!std::isfinite(sigma_)) throw ContractViolation("sigma must be finite");
  if (values_.size() != tau_grid_.size()) {
    throw ContractViolation("Laplace spectrum value count does not match tau grid");
  }
}

HalfLineResult forward_laplace(const ComplexFunction& f, Complex s, double truncation,
                               const QuadratureSpec& spec) {
  return integrate_halfline([&](double x) { return f(x) * std::exp(-s * x); }, truncation, spec,
                            std::abs(s.imag()));
}

HalfLineResult forward_laplace_lambda(const ComplexFunction& f, double sigma, double lambda,
                                      double truncation, const QuadratureSpec& spec) {
  return forward_laplace(f, Complex{sigma, -lambda}, truncation, spec);
}

LaplaceLineResult laplace_line(const ComplexFunction& f, double sigma, const Grid& tau_grid,
                               double truncation, const QuadratureSpec& spec) {
  std::vector<Complex> values;
  values.reserve(tau_grid.size());
  double tail = 0.0;
  for (double tau : tau_grid.points()) {
    const HalfLineResult r = forward_laplace(f, Complex{sigma, tau}, truncation, spec);
    values.push_back(r.value);
    tail = std::max(tail, r.tail_estimate);
  }
  return LaplaceLineResult{LaplaceSpectrum(sigma, tau_grid, std::move(values)), tail};
}

double bromwich_step(double t) {
  require_time(t);
  return std::min(0.05, std::numbers::pi / (8.0 * t));
}

BromwichResult bromwich_inverse(const LaplaceImage& fhat, double sigma, double half_height,
                                double t, const QuadratureSpec& spec,
                                const BromwichOptions& options) {
  require_time(t);
  if (!(half_height > 0.0) || !std::isfinite(half_height)) {
    throw ContractViolation("contour half-height T must be positive");
  }
  if (!std::isfinite(sigma)) throw ContractViolation("sigma must be finite");
  spec.validate();

  const double pole = reference_pole(sigma);
  const Complex top{sigma, half_height};
  const Complex bottom{sigma, -half_height};
  const Complex f_top = fhat(top);
  const Complex f_bottom = fhat(bottom);

  BromwichResult result;
  if (options.tail == TailCorrection::leading_order) {
    result.tail_amplitude = 0.5 * ((top - pole) * f_top + (bottom - pole) * f_bottom);
  }
  const Complex a = result.tail_amplitude;

  double peak = 0.0;
  auto corrected = [&](Complex s) {
    const Complex value = fhat(s);
    const Complex growth = std::exp(s * t);
    peak = std::max(peak, std::abs(value * growth));
    return (value - a / (s - pole)) * growth;
  };
  // Conjugate nodes are summed together so that a real f yields a real result
  // up to rounding.
  auto integrand = [&](double tau) {
    return corrected(Complex{sigma, tau}) + corrected(Complex{sigma, -tau});
  };

  const double step = bromwich_step(t);
  const int panels = static_cast<int>(std::ceil(half_height / step));
  QuadratureSpec uniform = spec;
  uniform.panels = std::max(spec.panels, panels);
  if (spec.method == QuadratureMethod::trapezoid) uniform.order = std::max(spec.order, panels);

  const Complex integral = integrate(integrand, 0.0, half_height, uniform);
  result.value = integral / kTwoPi + a * std::exp(pole * t);
  result.imaginary_residue = std::abs(result.value.imag());

  const double edge = std::max(std::abs(f_top * std::exp(top * t)),
                               std::abs(f_bottom * std::exp(bottom * t)));
  peak = std::max(peak, edge);
  result.edge_ratio = peak > 0.0 ? edge / peak : 0.0;
  result.truncation_warning = result.edge_ratio > kBromwichEdgeRatio;
  return result;
}

BromwichResult bromwich_inverse_sampled(const LaplaceSpectrum& spectrum, double t,
                                        const QuadratureSpec& spec,
                                        const BromwichOptions& options) {
  require_time(t);
  const Grid& taus = spectrum.tau_grid();
  const auto values = spectrum.values();
  if (taus.size() < 2) throw ContractViolation("sampled Bromwich inversion needs at least two tau samples");
  check_anti_aliasing(taus, Grid::uniform(t, t, 1));

  const double sigma = spectrum.sigma();
  const double pole = reference_pole(sigma);
  const Complex first{sigma, taus.front()};
  const Complex last{sigma, taus.back()};

  BromwichResult result;
  if (options.tail == TailCorrection::leading_order) {
    result.tail_amplitude = 0.5 * ((first - pole) * values.front() + (last - pole) * values.back());
  }
  const Complex a = result.tail_amplitude;

  const std::vector<double> w = sample_weights(taus, spec);
  Complex sum = 0.0;
  double peak = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const Complex s{sigma, taus[j]};
    const Complex growth = std::exp(s * t);
    peak = std::max(peak, std::abs(values[j] * growth));
    sum += w[j] * (values[j] - a / (s - pole)) * growth;
  }
  result.value = sum / kTwoPi + a * std::exp(pole * t);
  result.imaginary_residue = std::abs(result.value.imag());
  const double edge = std::max(std::abs(values.front() * std::exp(first * t)),
                               std::abs(values.back() * std::exp(last * t)));
  result.edge_ratio = peak > 0.0 ? edge / peak : 0.0;
  result.truncation_warning = result.edge_ratio > kBromwichEdgeRatio;
  return result;
}

Complex weighted_orthogonality_check(double lambda, double mu, double /*sigma*/, double truncation) {
  if (!(truncation > 0.0) || !std::isfinite(truncation)) {
    throw ContractViolation("truncation A must be positive");
  }
  const double d = lambda - mu;
  if (d == 0.0) return {truncation, 0.0};
  // (1 - e^{-i A d}) / (i d) = sin(A d)/d - i (1 - cos(A d))/d
  const double theta = truncation * d;
  const double half_sin = std::sin(0.5 * theta);
  return {std::sin(theta) / d, -2.0 * half_sin * half_sin / d};
}

Complex weighted_inner_product(double lambda, double mu, double sigma, double truncation,
                               const QuadratureSpec& spec) {
  const auto problem = EigenProblemSpec::weighted_halfline(sigma);
  const auto y_lambda = Eigenvalue::continuum(lambda);
  const auto y_mu = Eigenvalue::continuum(mu);
  return integrate(
      [&](double x) {
        return std::exp(-2.0 * sigma * x) * eigenfunction_eval(problem, y_lambda, x) *
               std::conj(eigenfunction_eval(problem, y_mu, x));
      },
      0.0, truncation, spec, std::abs(lambda - mu));
}

ExponentialTypeEstimate estimate_abscissa(const SampledFunction& samples) {
  ExponentialTypeEstimate out;
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t zeros = 0;
  std::size_t non_finite = 0;
  const auto pts = samples.grid().points();
  const auto vals = samples.values();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i] > 0.0)) continue;
    const double magnitude = std::abs(vals[i]);
    if (!std::isfinite(magnitude)) {
      ++non_finite;
      continue;
    }
    if (magnitude == 0.0) {
      ++zeros;
      continue;
    }
    xs.push_back(pts[i]);
    ys.push_back(std::log(magnitude));
  }
  if (zeros > 0) out.warnings.push_back("excluded " + std::to_string(zeros) + " zero samples");
  if (non_finite > 0) {
    out.warnings.push_back("excluded " + std::to_string(non_finite) + " non-finite samples");
  }
  if (xs.size() < kMinAbscissaSamples) {
    throw InsufficientDataError("abscissa estimate needs at least " +
                                std::to_string(kMinAbscissaSamples) +
                                " samples with x > 0 and f(x) != 0, got " +
                                std::to_string(xs.size()));
  }

  const std::size_t begin = xs.size() / 2;
  const auto m = static_cast<double>(xs.size() - begin);
  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = begin; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= m;
  y_mean /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = begin; i < xs.size(); ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  out.sigma_hat = sxy / sxx;
  const double intercept = y_mean - out.sigma_hat * x_mean;
  out.M_hat = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = begin; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + out.sigma_hat * xs[i]);
    ss += r * r;
  }
  out.fit_residual = std::sqrt(ss / m);
  out.samples_used = xs.size() - begin;
  return out;
}

}  // namespace unitransform
