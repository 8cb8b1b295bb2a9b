#include "unitransform/fourier_laplace.hpp"

#include <cmath>
#include <numbers>
#include <string_view>

#include "unitransform/eigenframe.hpp"
#include "unitransform/errors.hpp"
#include "unitransform/fourier_transform.hpp"

namespace unitransform {

namespace {

constexpr std::string_view kXAxis = "x-axis: ";
constexpr std::string_view kTAxis = "t-axis: ";

// Re-raises the in-flight numerical error with an axis prefix, keeping its type.
[[noreturn]] void rethrow_with_axis(std::string_view axis) {
  try {
    throw;
  } catch (const EvaluationError& e) {
    if (std::string_view(e.what()).starts_with("x-axis") ||
        std::string_view(e.what()).starts_with("t-axis")) {
      throw;
    }
    throw EvaluationError(std::string(axis) + e.what(), e.abscissa());
  } catch (const NumericalError& e) {
    const std::string_view what = e.what();
    if (what.starts_with("x-axis") || what.starts_with("t-axis")) throw;
    const std::string msg = std::string(axis) + e.what();
    if (dynamic_cast<const DivergenceError*>(&e)) throw DivergenceError(msg);
    if (dynamic_cast<const AliasingError*>(&e)) throw AliasingError(msg);
    if (dynamic_cast<const TruncationError*>(&e)) throw TruncationError(msg);
    throw QuadratureError(msg);
  }
}

void require_truncation(const FourierLaplaceTruncation& tr) {
  if (!(tr.x_half_width > 0.0) || !(tr.t_extent > 0.0)) {
    throw ContractViolation("Fourier-Laplace truncations A and X must be positive");
  }
}

}  // namespace

FourierLaplaceSpectrum::FourierLaplaceSpectrum(Grid lambda_grid, double sigma, Grid tau_grid,
                                               std::vector<Complex> values)
    : lambda_grid_(std::move(lambda_grid)),
      sigma_(sigma),
      tau_grid_(std::move(tau_grid)),
      values_(std::move(values)) {
  if (!std::isfinite(sigma_)) throw ContractViolation("sigma must be finite");
  if (values_.size() != lambda_grid_.size() * tau_grid_.size()) {
    throw ContractViolation("Fourier-Laplace value count does not match the grid product");
  }
}

LaplaceSpectrum FourierLaplaceSpectrum::row(std::size_t i) const {
  const auto n = tau_grid_.size();
  return LaplaceSpectrum(sigma_, tau_grid_,
                         std::vector<Complex>(values_.begin() + static_cast<std::ptrdiff_t>(i * n),
                                              values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
}

ForwardFlResult forward_fl(const ComplexFunction2D& f, const Grid& lambda_grid, double sigma,
                           const Grid& tau_grid, const FourierLaplaceTruncation& truncation,
                           const QuadratureSpec& spec) {
  require_truncation(truncation);
  std::vector<Complex> values;
  values.reserve(lambda_grid.size() * tau_grid.size());
  double tail = 0.0;
  for (double lambda : lambda_grid.points()) {
    // G(t) = 1/(2 pi) int f(x, t) e^{i lambda x} dx
    auto fourier_in_x = [&](double t) {
      try {
        return forward_ft_at([&](double x) { return f(x, t); }, lambda, truncation.x_half_width,
                             spec);
      } catch (const NumericalError&) {
        rethrow_with_axis(kXAxis);
      }
    };
    for (double tau : tau_grid.points()) {
      try {
        const HalfLineResult r =
            forward_laplace(fourier_in_x, Complex{sigma, tau}, truncation.t_extent, spec);
        values.push_back(r.value);
        tail = std::max(tail, r.tail_estimate);
      } catch (const NumericalError&) {
        rethrow_with_axis(kTAxis);
      }
    }
  }
  return ForwardFlResult{FourierLaplaceSpectrum(lambda_grid, sigma, tau_grid, std::move(values)),
                         tail};
}

ForwardFlResult forward_fl_separable(const ComplexFunction& g, const ComplexFunction& h,
                                     const Grid& lambda_grid, double sigma, const Grid& tau_grid,
                                     const FourierLaplaceTruncation& truncation,
                                     const QuadratureSpec& spec) {
  require_truncation(truncation);
  std::vector<Complex> x_part;
  try {
    const ContinuousSpectrum ft = forward_ft(g, lambda_grid, truncation.x_half_width, spec);
    x_part.assign(ft.values().begin(), ft.values().end());
  } catch (const NumericalError&) {
    rethrow_with_axis(kXAxis);
  }
  std::vector<Complex> t_part;
  double tail = 0.0;
  try {
    const LaplaceLineResult lt = laplace_line(h, sigma, tau_grid, truncation.t_extent, spec);
    t_part.assign(lt.spectrum.values().begin(), lt.spectrum.values().end());
    tail = lt.max_tail_estimate;
  } catch (const NumericalError&) {
    rethrow_with_axis(kTAxis);
  }
  std::vector<Complex> values;
  values.reserve(x_part.size() * t_part.size());
  for (const Complex& gx : x_part) {
    for (const Complex& ht : t_part) values.push_back(gx * ht);
  }
  return ForwardFlResult{FourierLaplaceSpectrum(lambda_grid, sigma, tau_grid, std::move(values)),
                         tail};
}

InverseFlGridResult inverse_fl_grid(const FourierLaplaceSpectrum& spectrum, const Grid& x_grid,
                                    const Grid& t_grid, const QuadratureSpec& spec,
                                    const BromwichOptions& options) {
  const Grid& lambdas = spectrum.lambda_grid();
  check_anti_aliasing(lambdas, x_grid);
  const std::vector<double> w = sample_weights(lambdas, spec);

  std::vector<LaplaceSpectrum> rows;
  rows.reserve(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) rows.push_back(spectrum.row(i));

  bool warning = false;
  std::vector<Complex> values(x_grid.size() * t_grid.size());
  std::vector<Complex> in_time(lambdas.size());
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    const double t = t_grid[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      try {
        const BromwichResult b = bromwich_inverse_sampled(rows[i], t, spec, options);
        in_time[i] = b.value;
        warning = warning || b.truncation_warning;
      } catch (const NumericalError&) {
        rethrow_with_axis(kTAxis);
      }
    }
    for (std::size_t k = 0; k < x_grid.size(); ++k) {
      const double x = x_grid[k];
      Complex sum = 0.0;
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        sum += w[i] * in_time[i] * std::polar(1.0, -lambdas[i] * x);
      }
      values[k * t_grid.size() + j] = sum;
    }
  }
  return InverseFlGridResult{SampledFunction2D(x_grid, t_grid, std::move(values)), warning};
}

InverseFlResult inverse_fl(const FourierLaplaceSpectrum& spectrum, double x, double t,
                           const QuadratureSpec& spec, const BromwichOptions& options) {
  const InverseFlGridResult r =
      inverse_fl_grid(spectrum, Grid::uniform(x, x, 1), Grid::uniform(t, t, 1), spec, options);
  return InverseFlResult{r.samples.value(0, 0), r.truncation_warning};
}

Complex fl_inner_product(double lambda, double mu, double lambda_p, double mu_p, double sigma,
                         const FourierLaplaceTruncation& truncation, const QuadratureSpec& spec) {
  require_truncation(truncation);
  const auto problem = EigenProblemSpec::product_2d(sigma);
  const auto first = Eigenvalue::continuum(lambda, mu);
  const auto second = Eigenvalue::continuum(lambda_p, mu_p);
  auto over_t = [&](double x) {
    return integrate(
        [&](double t) {
          return std::exp(-2.0 * sigma * t) * eigenfunction_eval(problem, first, x, t) *
                 std::conj(eigenfunction_eval(problem, second, x, t));
        },
        0.0, truncation.t_extent, spec, std::abs(mu - mu_p));
  };
  return integrate(over_t, -truncation.x_half_width, truncation.x_half_width, spec,
                   std::abs(lambda - lambda_p));
}

Complex fl_orthogonality_kernel(double lambda, double mu, double lambda_p, double mu_p,
                                double sigma, const FourierLaplaceTruncation& truncation) {
  require_truncation(truncation);
  return 2.0 * std::numbers::pi * dirichlet_delta(lambda - lambda_p, truncation.x_half_width) *
         weighted_orthogonality_check(mu, mu_p, sigma, truncation.t_extent);
}

}  // namespace unitransform
