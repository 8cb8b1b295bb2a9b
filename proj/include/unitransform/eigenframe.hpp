#pragma once

// The four first-order eigenvalue problems
//
//   periodic-interval   i y' = lambda y on (-L, L), y(-L) = y(L)
//   whole-line          i y' = lambda y on R
//   weighted-halfline   i (y' - sigma y) = lambda y on [0, inf)
//   product-2d          i dy/dx = lambda y,  i (dy/dt - sigma y) = mu y
//
// with eigenvalue enumeration, eigenfunction evaluation, the residual-ratio
// test for continuum eigenvalues and the second-order (Sturm-Liouville)
// consistency check.

#include <cstdint>
#include <optional>
#include <vector>

#include "unitransform/numerics.hpp"

namespace unitransform {

enum class ProblemKind { periodic_interval, whole_line, weighted_halfline, product_2d };

std::string to_string(ProblemKind kind);

class EigenProblemSpec {
 public:
  static EigenProblemSpec periodic(double half_length);
  static EigenProblemSpec whole_line();
  static EigenProblemSpec weighted_halfline(double sigma);
  static EigenProblemSpec product_2d(double sigma);

  ProblemKind kind() const noexcept { return kind_; }
  /// Half-length L; only meaningful for periodic_interval.
  double half_length() const noexcept { return half_length_; }
  /// Weight exponent; only meaningful for weighted_halfline and product_2d.
  double sigma() const noexcept { return sigma_; }

 private:
  EigenProblemSpec(ProblemKind kind, double half_length, double sigma)
      : kind_(kind), half_length_(half_length), sigma_(sigma) {}

  ProblemKind kind_;
  double half_length_;
  double sigma_;
};

enum class SpectrumKind { discrete, continuum };

struct Eigenvalue {
  double value = 0.0;                  // lambda
  std::optional<double> second;       // mu, product-2d only
  SpectrumKind spectrum = SpectrumKind::continuum;
  std::optional<std::int64_t> index;  // k for discrete eigenvalues k pi / L

  static Eigenvalue discrete(std::int64_t k, double half_length);
  static Eigenvalue continuum(double lambda);
  static Eigenvalue continuum(double lambda, double mu);
};

/// lambda_k = k pi / L for k = -k_max..k_max, in increasing order.
std::vector<Eigenvalue> discrete_eigenvalues(double half_length, std::int64_t k_max);

/// Continuum eigenfunction / discrete eigenfunction value at x.
/// Periodic eigenfunctions are evaluated with exact phase reduction, so
/// y_k(+-L) = (-1)^k exactly.
Complex eigenfunction_eval(const EigenProblemSpec& problem, const Eigenvalue& eigenvalue, double x);
/// product-2d eigenfunction e^{-i lambda x + (sigma - i mu) t}.
Complex eigenfunction_eval(const EigenProblemSpec& problem, const Eigenvalue& eigenvalue, double x,
                           double t);

/// Derivative of order 0, 1 or 2 with respect to x of the 1-D eigenfunction.
Complex eigenfunction_derivative(const EigenProblemSpec& problem, const Eigenvalue& eigenvalue,
                                 double x, int order);

/// Gaussian-windowed member y_n(x) = y_lambda(x) w(x / n), w(u) = e^{-u^2/2}.
struct WindowedTestSequence {
  double lambda = 0.0;
  int n = 1;

  double window(double x) const;
  double window_derivative(double x) const;
};

/// ||(M - lambda) y_n|| / ||y_n|| by quadrature over [-8n, 8n] (whole line)
/// or [0, 8n] with weight e^{-2 sigma x} (weighted half-line).
double residual_ratio(const EigenProblemSpec& problem, double lambda,
                      const WindowedTestSequence& seq, const QuadratureSpec& spec = {});

struct SturmLiouvilleReport {
  double max_residual = 0.0;       // max_x |-y'' - (k pi / L)^2 y|
  Complex value_at_left;           // y(-L)
  Complex value_at_right;          // y(L)
  Complex derivative_at_left;      // y'(-L)
  Complex derivative_at_right;     // y'(L)
  bool boundary_conditions_hold = false;  // exact equality of both pairs
};

SturmLiouvilleReport sl_residual(double half_length, std::int64_t k, const Grid& x_grid);

/// max_x |i y_k'(x) - lambda_k y_k(x)| over the grid.
double first_order_residual(double half_length, std::int64_t k, const Grid& x_grid);

}  // namespace unitransform
