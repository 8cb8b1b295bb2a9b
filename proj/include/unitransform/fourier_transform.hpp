#pragma once

// Fourier transform pair with the 1/2pi prefactor on the forward direction:
//
//   F(lambda) = 1/(2 pi) int f(x) e^{+i lambda x} dx
//   f(x)      =          int F(lambda) e^{-i lambda x} d lambda
//
// Relation to the unitary convention G(w) = 1/sqrt(2 pi) int f(x) e^{-i w x} dx:
//   F(lambda) = G(-lambda) / sqrt(2 pi).
//
// The Dirac delta is never represented as a value; it appears only through
// the Dirichlet kernel (1/2pi) int_{-A}^{A} e^{-i a x} dx = sin(a A) / (pi a).

#include <string>
#include <vector>

#include "unitransform/numerics.hpp"

namespace unitransform {

inline const std::string kPaperFourierConvention = "paper-fourier";

/// Samples of F(lambda) on a real frequency grid.
class ContinuousSpectrum {
 public:
  ContinuousSpectrum(Grid lambda_grid, std::vector<Complex> values);

  const Grid& lambda_grid() const noexcept { return lambda_grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  const std::string& convention() const noexcept { return kPaperFourierConvention; }

 private:
  Grid lambda_grid_;
  std::vector<Complex> values_;
};

/// F(lambda) = 1/(2 pi) int_{-A}^{A} f(x) e^{i lambda x} dx at a single lambda.
Complex forward_ft_at(const ComplexFunction& f, double lambda, double truncation,
                      const QuadratureSpec& spec = {});

ContinuousSpectrum forward_ft(const ComplexFunction& f, const Grid& lambda_grid, double truncation,
                              const QuadratureSpec& spec = {});

inline constexpr double kSpectrumTailRatio = 1e-8;

/// f(x) = int F(lambda) e^{-i lambda x} d lambda over the spectrum grid, no prefactor.
/// Throws AliasingError when max|x| * max spacing > pi/4, and TruncationError
/// when the spectrum at either end of its grid exceeds 1e-8 of its peak.
SampledFunction inverse_ft(const ContinuousSpectrum& spectrum, const Grid& x_grid,
                           const QuadratureSpec& spec = {});

/// Weights used to integrate sampled data on `grid` under `spec`.
std::vector<double> sample_weights(const Grid& grid, const QuadratureSpec& spec);

/// Throws AliasingError unless max|x| * max spacing of `frequency_grid` <= pi/4.
void check_anti_aliasing(const Grid& frequency_grid, const Grid& x_grid);

/// (1/2pi) int_{-A}^{A} e^{-i a x} dx = sin(a A) / (pi a); A/pi when |a| < 1e-12.
double dirichlet_delta(double a, double truncation);

/// int_{mu-W}^{mu+W} g(lambda) dirichlet_delta(lambda - mu, A) d lambda, which
/// tends to g(mu) as A grows.
Complex sifting_integral(const ComplexFunction& g, double mu, double truncation, double half_width,
                         const QuadratureSpec& spec = {});

/// int_{-A}^{A} |e^{-i lambda x}|^2 dx by quadrature (equals 2A).
double windowed_norm_squared(double lambda, double truncation, const QuadratureSpec& spec = {});

}  // namespace unitransform
