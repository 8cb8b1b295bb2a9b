#pragma once

// Complex and real Fourier series on (-L, L).
//
// Sign convention: synthesis uses e^{-i k pi x / L}, analysis uses
// e^{+i k pi x / L}:
//
//   f(x) ~ sum_k c_k e^{-i k pi x / L},   c_k = 1/(2L) int_{-L}^{L} f(x) e^{i k pi x / L} dx
//
// This is the complex conjugate of the more common textbook pairing; c_k here
// equals c_{-k} there. Real coefficients a_k, b_k are convention-independent.

#include <cstdint>
#include <vector>

#include "unitransform/numerics.hpp"

namespace unitransform {

class FourierCoefficientSet {
 public:
  /// `coefficients` holds c_{-K}, ..., c_K (size 2K + 1).
  FourierCoefficientSet(double half_length, std::vector<Complex> coefficients);

  double half_length() const noexcept { return half_length_; }
  std::int64_t max_index() const noexcept { return static_cast<std::int64_t>(c_.size() / 2); }
  Complex operator[](std::int64_t k) const;
  std::span<const Complex> coefficients() const noexcept { return c_; }

 private:
  double half_length_;
  std::vector<Complex> c_;
};

class RealFourierCoefficientSet {
 public:
  /// `a` holds a_0..a_K, `b` holds b_1..b_K.
  RealFourierCoefficientSet(double half_length, std::vector<double> a, std::vector<double> b);

  double half_length() const noexcept { return half_length_; }
  std::int64_t max_index() const noexcept { return static_cast<std::int64_t>(a_.size()) - 1; }
  double a(std::int64_t k) const;
  double b(std::int64_t k) const;
  std::span<const double> a_values() const noexcept { return a_; }
  std::span<const double> b_values() const noexcept { return b_; }

  /// a_0 / 2 + sum_k a_k cos(k pi x / L) + b_k sin(k pi x / L).
  double synthesize(double x) const;

 private:
  double half_length_;
  std::vector<double> a_;
  std::vector<double> b_;
};

FourierCoefficientSet complex_coefficients(const ComplexFunction& f, double half_length,
                                           std::int64_t max_index, const QuadratureSpec& spec = {});

/// Partial sum over |k| <= K at x in [-L, L].
Complex synthesize(const FourierCoefficientSet& coeffs, double x);

/// Throws ContractViolation if f returns a value with nonzero imaginary part.
RealFourierCoefficientSet real_coefficients(const ComplexFunction& f, double half_length,
                                            std::int64_t max_index,
                                            const QuadratureSpec& spec = {});

inline constexpr double kConjugateSymmetryTolerance = 1e-8;

/// a_k = c_k + c_{-k}, b_k = -i (c_k - c_{-k}). Throws ContractViolation naming
/// the worst k when |c_{-k} - conj(c_k)| exceeds `tolerance`.
RealFourierCoefficientSet complex_to_real(const FourierCoefficientSet& coeffs,
                                          double tolerance = kConjugateSymmetryTolerance);

/// Dense square matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// Entry (k + K, l + K) = <y_k, y_l> = int_{-L}^{L} e^{-i k pi x/L} e^{i l pi x/L} dx.
ComplexMatrix gram_matrix(double half_length, std::int64_t max_index,
                          const QuadratureSpec& spec = {});

struct GramSummary {
  double max_diagonal_deviation = 0.0;  // max |G_kk - 2L|
  double max_off_diagonal = 0.0;        // max |G_kl|, k != l
};

GramSummary summarize_gram(const ComplexMatrix& gram, double half_length);

}  // namespace unitransform
