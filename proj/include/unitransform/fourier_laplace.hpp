#pragma once

// Two-dimensional Fourier-Laplace pair on R x [0, inf), composed from the 1-D
// transforms:
//
//   F(lambda, s) = 1/(2 pi) int_R int_0^inf f(x, t) e^{i lambda x - s t} dt dx
//   f(x, t)      = int_R [ 1/(2 pi i) int_{sigma - i inf}^{sigma + i inf} F(lambda, s) e^{s t} ds ]
//                        e^{-i lambda x} d lambda
//
// The forward 1/(2 pi) belongs to the Fourier factor and 1/(2 pi i) to the
// Bromwich factor, so inverse_fl(forward_fl(f)) = f. Other placements of the
// constants differ only by constant factors: keeping this forward transform but
// adding another 1/(2 pi) to the inverse returns f / (2 pi); a forward prefactor
// of 1/(2 pi)^2 yields F / (2 pi).

#include "unitransform/laplace.hpp"
#include "unitransform/numerics.hpp"

namespace unitransform {

/// F(lambda_i, sigma + i tau_j) stored lambda-major: index i * tau_grid.size() + j.
class FourierLaplaceSpectrum {
 public:
  FourierLaplaceSpectrum(Grid lambda_grid, double sigma, Grid tau_grid, std::vector<Complex> values);

  const Grid& lambda_grid() const noexcept { return lambda_grid_; }
  double sigma() const noexcept { return sigma_; }
  const Grid& tau_grid() const noexcept { return tau_grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  Complex value(std::size_t i, std::size_t j) const { return values_[i * tau_grid_.size() + j]; }

  /// Row i as a 1-D Laplace spectrum in s.
  LaplaceSpectrum row(std::size_t i) const;

 private:
  Grid lambda_grid_;
  double sigma_;
  Grid tau_grid_;
  std::vector<Complex> values_;
};

struct FourierLaplaceTruncation {
  double x_half_width = 12.0;  // A: x-integral over [-A, A]
  double t_extent = 40.0;      // X: t-integral over [0, X]
};

struct ForwardFlResult {
  FourierLaplaceSpectrum spectrum;
  double max_tail_estimate = 0.0;
};

/// General f(x, t): nested quadrature, x innermost. Numerical errors are
/// re-raised with the failing axis ("x-axis: " / "t-axis: ") prefixed.
ForwardFlResult forward_fl(const ComplexFunction2D& f, const Grid& lambda_grid, double sigma,
                           const Grid& tau_grid, const FourierLaplaceTruncation& truncation,
                           const QuadratureSpec& spec = {});

/// f(x, t) = g(x) h(t): forward_ft(g) (x) forward_laplace(h) entrywise.
ForwardFlResult forward_fl_separable(const ComplexFunction& g, const ComplexFunction& h,
                                     const Grid& lambda_grid, double sigma, const Grid& tau_grid,
                                     const FourierLaplaceTruncation& truncation,
                                     const QuadratureSpec& spec = {});

struct InverseFlResult {
  Complex value;
  bool truncation_warning = false;
};

/// Bromwich inversion in s for each lambda row, then the inverse Fourier
/// integral over lambda.
InverseFlResult inverse_fl(const FourierLaplaceSpectrum& spectrum, double x, double t,
                           const QuadratureSpec& spec = {}, const BromwichOptions& options = {});

struct InverseFlGridResult {
  SampledFunction2D samples;
  bool truncation_warning = false;
};

InverseFlGridResult inverse_fl_grid(const FourierLaplaceSpectrum& spectrum, const Grid& x_grid,
                                    const Grid& t_grid, const QuadratureSpec& spec = {},
                                    const BromwichOptions& options = {});

/// Doubly truncated weighted inner product of two product-2d eigenfunctions:
/// int_{-A}^{A} int_0^X e^{-2 sigma t} y_{lambda,mu} conj(y_{lambda',mu'}) dt dx,
/// by nested quadrature.
Complex fl_inner_product(double lambda, double mu, double lambda_p, double mu_p, double sigma,
                         const FourierLaplaceTruncation& truncation,
                         const QuadratureSpec& spec = {});

/// Product of the 1-D regularized kernels:
/// 2 pi dirichlet_delta(lambda - lambda', A) * weighted_orthogonality_check(mu, mu', sigma, X).
Complex fl_orthogonality_kernel(double lambda, double mu, double lambda_p, double mu_p,
                                double sigma, const FourierLaplaceTruncation& truncation);

}  // namespace unitransform
