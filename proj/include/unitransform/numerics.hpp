#pragma once

// Grids, sampled functions and the quadrature engines shared by every
// transform module.
//
// Quadrature methods:
//   trapezoid       composite trapezoid rule, `order` panels
//   gauss_legendre  composite Gauss-Legendre, `order` nodes on each of `panels` panels
//   adaptive        globally adaptive Gauss-Kronrod (7/15) bisection
//
// Oscillatory kernels e^{i w x} are handled by forcing at least
// ceil(|w| (b - a) / 2pi) initial panels; callers pass |w| as `frequency`.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace unitransform {

using Complex = std::complex<double>;
using ComplexFunction = std::function<Complex(double)>;
using ComplexFunction2D = std::function<Complex(double, double)>;

inline constexpr double kDefaultTolerance = 1e-10;

/// e^{i pi v}, exact whenever v is a multiple of 1/2.
Complex unit_phase_pi(double v);

enum class GridKind { uniform, gauss_nodes, irregular };

std::string to_string(GridKind kind);

class Grid {
 public:
  /// n equally spaced points from a to b inclusive (n == 1 requires a == b).
  static Grid uniform(double a, double b, std::size_t n);
  /// n Gauss-Legendre nodes on (a, b); the grid carries the matching weights.
  static Grid gauss_legendre(double a, double b, std::size_t n);
  /// Arbitrary strictly increasing points; tagged uniform when the spacing is
  /// constant within 1e-12 relative.
  static Grid from_points(std::vector<double> points);

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  GridKind kind() const noexcept { return kind_; }

  /// Largest gap between consecutive points (0 for a single point).
  double max_spacing() const noexcept;
  /// Weights integrating sampled data over [front, back]: trapezoid weights
  /// for uniform and irregular grids, the Gauss weights for gauss_nodes.
  std::vector<double> quadrature_weights() const;

 private:
  Grid(std::vector<double> points, GridKind kind, std::vector<double> weights = {});

  std::vector<double> points_;
  GridKind kind_;
  std::vector<double> gauss_weights_;
};

/// Complex samples of a function of one real variable.
class SampledFunction {
 public:
  SampledFunction(Grid grid, std::vector<Complex> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

/// Complex samples on an x-by-t product grid, stored x-major:
/// value(i, j) = values[i * t_grid.size() + j].
class SampledFunction2D {
 public:
  SampledFunction2D(Grid x_grid, Grid t_grid, std::vector<Complex> values);

  const Grid& x_grid() const noexcept { return x_grid_; }
  const Grid& t_grid() const noexcept { return t_grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  Complex value(std::size_t i, std::size_t j) const { return values_[i * t_grid_.size() + j]; }

 private:
  Grid x_grid_;
  Grid t_grid_;
  std::vector<Complex> values_;
};

enum class QuadratureMethod { trapezoid, gauss_legendre, adaptive };

std::string to_string(QuadratureMethod method);
QuadratureMethod parse_quadrature_method(const std::string& name);

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::adaptive;
  int order = 15;      // trapezoid: panels; gauss_legendre: nodes per panel
  int panels = 1;      // gauss_legendre / adaptive: minimum initial panel count
  double tolerance = kDefaultTolerance;
  int max_subdivisions = 50000;

  /// Throws ContractViolation unless tolerance > 0, order >= 2, panels >= 1.
  void validate() const;
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct HalfLineResult {
  Complex value;
  double error_estimate = 0.0;
  /// Estimated |integral over [X, inf)|, assuming exponential decay beyond X.
  double tail_estimate = 0.0;
};

/// Integral of f over [a, b]. `frequency` is the largest angular frequency of
/// an oscillatory factor in f (0 if none).
QuadratureResult integrate_with_error(const ComplexFunction& f, double a, double b,
                                      const QuadratureSpec& spec, double frequency = 0.0);

inline Complex integrate(const ComplexFunction& f, double a, double b,
                         const QuadratureSpec& spec, double frequency = 0.0) {
  return integrate_with_error(f, a, b, spec, frequency).value;
}

/// Integral of f over [0, X] plus a tail estimate for [X, inf). Throws
/// DivergenceError when |f(X)| >= |f(X/2)| (integrand not decaying).
HalfLineResult integrate_halfline(const ComplexFunction& f, double truncation,
                                  const QuadratureSpec& spec, double frequency = 0.0);

/// Weighted sum of samples using grid.quadrature_weights().
Complex integrate_samples(const Grid& grid, std::span<const Complex> values);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_rule(std::size_t n);

}  // namespace unitransform
