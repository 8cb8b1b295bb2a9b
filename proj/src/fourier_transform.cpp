#include "unitransform/fourier_transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "unitransform/eigenframe.hpp"
#include "unitransform/errors.hpp"

namespace unitransform {

namespace {

void require_truncation(double A) {
  if (!(A > 0.0) || !std::isfinite(A)) throw ContractViolation("truncation A must be positive");
}

}  // namespace

ContinuousSpectrum::ContinuousSpectrum(Grid lambda_grid, std::vector<Complex> values)
    : lambda_grid_(std::move(lambda_grid)), values_(std::move(values)) {
  if (values_.size() != lambda_grid_.size()) {
    throw ContractViolation("spectrum value count does not match lambda grid");
  }
}

Complex forward_ft_at(const ComplexFunction& f, double lambda, double truncation,
                      const QuadratureSpec& spec) {
  require_truncation(truncation);
  const Complex integral =
      integrate([&](double x) { return f(x) * std::polar(1.0, lambda * x); }, -truncation,
                truncation, spec, std::abs(lambda));
  return integral / (2.0 * std::numbers::pi);
}

ContinuousSpectrum forward_ft(const ComplexFunction& f, const Grid& lambda_grid, double truncation,
                              const QuadratureSpec& spec) {
  std::vector<Complex> values;
  values.reserve(lambda_grid.size());
  for (double lambda : lambda_grid.points()) {
    values.push_back(forward_ft_at(f, lambda, truncation, spec));
  }
  return ContinuousSpectrum(lambda_grid, std::move(values));
}

std::vector<double> sample_weights(const Grid& grid, const QuadratureSpec& spec) {
  if (spec.method == QuadratureMethod::gauss_legendre && grid.kind() != GridKind::gauss_nodes) {
    throw ContractViolation("gauss-legendre sample quadrature needs a gauss-nodes grid");
  }
  if (spec.method == QuadratureMethod::trapezoid && grid.kind() == GridKind::gauss_nodes) {
    const auto pts = grid.points();
    return Grid::from_points({pts.begin(), pts.end()}).quadrature_weights();
  }
  return grid.quadrature_weights();
}

void check_anti_aliasing(const Grid& frequency_grid, const Grid& x_grid) {
  const double reach = std::max(std::abs(x_grid.front()), std::abs(x_grid.back()));
  const double product = reach * frequency_grid.max_spacing();
  if (product > std::numbers::pi / 4.0) {
    std::ostringstream os;
    os.precision(17);
    os << "spectrum grid too coarse: max|x| * spacing = " << product << " exceeds pi/4";
    throw AliasingError(os.str());
  }
}

SampledFunction inverse_ft(const ContinuousSpectrum& spectrum, const Grid& x_grid,
                           const QuadratureSpec& spec) {
  const Grid& lambdas = spectrum.lambda_grid();
  const auto values = spectrum.values();
  check_anti_aliasing(lambdas, x_grid);

  double peak = 0.0;
  for (const Complex& v : values) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(values.front()), std::abs(values.back()));
  if (peak > 0.0 && edge > kSpectrumTailRatio * peak) {
    std::ostringstream os;
    os.precision(17);
    os << "spectrum does not decay at the ends of its grid: |F(edge)| / peak = " << edge / peak;
    throw TruncationError(os.str());
  }

  const std::vector<double> w = sample_weights(lambdas, spec);
  std::vector<Complex> out;
  out.reserve(x_grid.size());
  for (double x : x_grid.points()) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      sum += w[j] * values[j] * std::polar(1.0, -lambdas[j] * x);
    }
    out.push_back(sum);
  }
  return SampledFunction(x_grid, std::move(out));
}

double dirichlet_delta(double a, double truncation) {
  require_truncation(truncation);
  if (std::abs(a) < 1e-12) return truncation / std::numbers::pi;
  return std::sin(a * truncation) / (std::numbers::pi * a);
}

Complex sifting_integral(const ComplexFunction& g, double mu, double truncation, double half_width,
                         const QuadratureSpec& spec) {
  require_truncation(truncation);
  if (!(half_width > 0.0)) throw ContractViolation("sifting half-width must be positive");
  return integrate([&](double lambda) { return g(lambda) * dirichlet_delta(lambda - mu, truncation); },
                   mu - half_width, mu + half_width, spec, truncation);
}

double windowed_norm_squared(double lambda, double truncation, const QuadratureSpec& spec) {
  require_truncation(truncation);
  const auto problem = EigenProblemSpec::whole_line();
  const auto ev = Eigenvalue::continuum(lambda);
  return integrate([&](double x) { return Complex{std::norm(eigenfunction_eval(problem, ev, x)), 0.0}; },
                   -truncation, truncation, spec)
      .real();
}

}  // namespace unitransform
