#pragma once

// Laplace transform on [0, inf), truncated Bromwich inversion along the
// vertical line Re(s) = sigma, weighted orthogonality of the continuum
// eigenfunctions e^{(sigma - i lambda) x}, and growth-rate estimation.
//
// With s = sigma - i lambda the lambda-form of the transform,
//   F(lambda) = int_0^inf f(x) e^{(-sigma + i lambda) x} dx,
// is the usual f^(s) = int_0^inf f(x) e^{-s x} dx, and the inverse is
//   f(t) = 1/(2 pi i) int_{sigma - i inf}^{sigma + i inf} f^(s) e^{s t} ds
//        = 1/(2 pi)   int_{-inf}^{inf} f^(sigma + i tau) e^{(sigma + i tau) t} d tau.

#include <functional>
#include <string>
#include <vector>

#include "unitransform/numerics.hpp"

namespace unitransform {

using LaplaceImage = std::function<Complex(Complex)>;

/// f^(sigma + i tau) sampled on a grid of tau.
class LaplaceSpectrum {
 public:
  LaplaceSpectrum(double sigma, Grid tau_grid, std::vector<Complex> values);

  double sigma() const noexcept { return sigma_; }
  const Grid& tau_grid() const noexcept { return tau_grid_; }
  std::span<const Complex> values() const noexcept { return values_; }

 private:
  double sigma_;
  Grid tau_grid_;
  std::vector<Complex> values_;
};

struct ExponentialTypeEstimate {
  double sigma_hat = 0.0;     // fitted growth rate
  double M_hat = 0.0;         // fitted prefactor, exp(intercept)
  double fit_residual = 0.0;  // RMS deviation of log|f| from the fit
  std::size_t samples_used = 0;
  std::vector<std::string> warnings;
};

/// int_0^X f(x) e^{-s x} dx with tail metadata. Divergence errors propagate.
HalfLineResult forward_laplace(const ComplexFunction& f, Complex s, double truncation,
                               const QuadratureSpec& spec = {});

/// The lambda-form F(lambda) = int_0^X f(x) e^{(-sigma + i lambda) x} dx; same
/// code path as forward_laplace with s = sigma - i lambda.
HalfLineResult forward_laplace_lambda(const ComplexFunction& f, double sigma, double lambda,
                                      double truncation, const QuadratureSpec& spec = {});

struct LaplaceLineResult {
  LaplaceSpectrum spectrum;
  double max_tail_estimate = 0.0;
};

/// f^(sigma + i tau) for every tau in the grid.
LaplaceLineResult laplace_line(const ComplexFunction& f, double sigma, const Grid& tau_grid,
                               double truncation, const QuadratureSpec& spec = {});

enum class TailCorrection {
  none,           // plain truncated segment [-T, T]
  leading_order,  // subtract a / (s - p), p = sigma - 1, and add its exact inverse a e^{p t}
};

struct BromwichOptions {
  TailCorrection tail = TailCorrection::leading_order;
};

inline constexpr double kBromwichEdgeRatio = 1e-6;

struct BromwichResult {
  Complex value;
  double imaginary_residue = 0.0;  // |Im value|; ~0 for real f
  double edge_ratio = 0.0;         // |integrand at +-iT| / peak |integrand|
  bool truncation_warning = false; // edge_ratio > 1e-6
  Complex tail_amplitude;          // a, the leading 1/s coefficient (0 without correction)
};

/// Largest tau step used for inversion at time t: min(0.05, pi / (8 t)).
double bromwich_step(double t);

/// 1/(2 pi) int_{-T}^{T} f^(sigma + i tau) e^{(sigma + i tau) t} d tau on
/// uniform panels of width <= bromwich_step(t).
BromwichResult bromwich_inverse(const LaplaceImage& fhat, double sigma, double half_height,
                                double t, const QuadratureSpec& spec = {},
                                const BromwichOptions& options = {});

/// Bromwich inversion of sampled data; the tail amplitude comes from the two
/// end samples. Throws AliasingError when t * max tau spacing > pi/4.
BromwichResult bromwich_inverse_sampled(const LaplaceSpectrum& spectrum, double t,
                                        const QuadratureSpec& spec = {},
                                        const BromwichOptions& options = {});

/// int_0^A e^{-2 sigma x} y_lambda(x) conj(y_mu(x)) dx in closed form, i.e.
/// int_0^A e^{-i (lambda - mu) x} dx; exactly A when lambda == mu.
Complex weighted_orthogonality_check(double lambda, double mu, double sigma, double truncation);

/// Same inner product by quadrature of the weighted eigenfunction product.
Complex weighted_inner_product(double lambda, double mu, double sigma, double truncation,
                               const QuadratureSpec& spec = {});

inline constexpr std::size_t kMinAbscissaSamples = 8;

/// Least-squares fit of log|f(x)| = log M + sigma x over the upper half of the
/// usable samples (x > 0, f != 0).
ExponentialTypeEstimate estimate_abscissa(const SampledFunction& samples);

/// sigma_hat + 1, the default inversion line.
inline double default_inversion_sigma(const ExponentialTypeEstimate& estimate) {
  return estimate.sigma_hat + 1.0;
}

}  // namespace unitransform
