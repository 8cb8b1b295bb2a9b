#include "unitransform/fourier_series.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "unitransform/eigenframe.hpp"
#include "unitransform/errors.hpp"

namespace unitransform {

namespace {

void require_half_length(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw ContractViolation("Fourier series needs L > 0");
}

void require_max_index(std::int64_t K) {
  if (K < 0) throw ContractViolation("coefficient count K must be nonnegative");
}

// Runs one coefficient integral, tagging numerical failures with k.
template <typename Body>
Complex coefficient_integral(std::int64_t k, Body&& body) {
  try {
    return body();
  } catch (const EvaluationError& e) {
    throw EvaluationError("coefficient k = " + std::to_string(k) + ": " + e.what(), e.abscissa());
  } catch (const NumericalError& e) {
    throw QuadratureError("coefficient k = " + std::to_string(k) + ": " + e.what());
  }
}

}  // namespace

FourierCoefficientSet::FourierCoefficientSet(double half_length, std::vector<Complex> coefficients)
    : half_length_(half_length), c_(std::move(coefficients)) {
  require_half_length(half_length_);
  if (c_.size() % 2 != 1) {
    throw ContractViolation("coefficient set needs a symmetric index range (odd length)");
  }
}

Complex FourierCoefficientSet::operator[](std::int64_t k) const {
  const std::int64_t K = max_index();
  if (k < -K || k > K) return {0.0, 0.0};
  return c_[static_cast<std::size_t>(k + K)];
}

RealFourierCoefficientSet::RealFourierCoefficientSet(double half_length, std::vector<double> a,
                                                     std::vector<double> b)
    : half_length_(half_length), a_(std::move(a)), b_(std::move(b)) {
  require_half_length(half_length_);
  if (a_.empty() || b_.size() + 1 != a_.size()) {
    throw ContractViolation("real coefficient set needs a_0..a_K and b_1..b_K");
  }
  for (double v : a_) {
    if (!std::isfinite(v)) throw ContractViolation("non-finite a_k");
  }
  for (double v : b_) {
    if (!std::isfinite(v)) throw ContractViolation("non-finite b_k");
  }
}

double RealFourierCoefficientSet::a(std::int64_t k) const {
  if (k < 0 || k > max_index()) return 0.0;
  return a_[static_cast<std::size_t>(k)];
}

double RealFourierCoefficientSet::b(std::int64_t k) const {
  if (k < 1 || k > max_index()) return 0.0;
  return b_[static_cast<std::size_t>(k - 1)];
}

double RealFourierCoefficientSet::synthesize(double x) const {
  double sum = 0.5 * a_[0];
  for (std::int64_t k = 1; k <= max_index(); ++k) {
    const Complex phase = unit_phase_pi(static_cast<double>(k) * (x / half_length_));
    sum += a(k) * phase.real() + b(k) * phase.imag();
  }
  return sum;
}

FourierCoefficientSet complex_coefficients(const ComplexFunction& f, double half_length,
                                           std::int64_t max_index, const QuadratureSpec& spec) {
  require_half_length(half_length);
  require_max_index(max_index);
  const double L = half_length;
  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(2 * max_index + 1));
  for (std::int64_t k = -max_index; k <= max_index; ++k) {
    const double kd = static_cast<double>(k);
    const Complex integral = coefficient_integral(k, [&] {
      return integrate([&](double x) { return f(x) * unit_phase_pi(kd * (x / L)); }, -L, L, spec,
                       std::abs(kd) * std::numbers::pi / L);
    });
    c.push_back(integral / (2.0 * L));
  }
  return FourierCoefficientSet(L, std::move(c));
}

Complex synthesize(const FourierCoefficientSet& coeffs, double x) {
  const double L = coeffs.half_length();
  if (!(x >= -L && x <= L)) throw ContractViolation("synthesis point outside [-L, L]");
  Complex sum = 0.0;
  for (std::int64_t k = -coeffs.max_index(); k <= coeffs.max_index(); ++k) {
    sum += coeffs[k] * unit_phase_pi(-static_cast<double>(k) * (x / L));
  }
  return sum;
}

RealFourierCoefficientSet real_coefficients(const ComplexFunction& f, double half_length,
                                            std::int64_t max_index, const QuadratureSpec& spec) {
  require_half_length(half_length);
  require_max_index(max_index);
  const double L = half_length;
  auto real_f = [&](double x) {
    const Complex v = f(x);
    if (v.imag() != 0.0) {
      std::ostringstream os;
      os.precision(17);
      os << "real_coefficients needs a real function; f(" << x << ") has imaginary part "
         << v.imag();
      throw ContractViolation(os.str());
    }
    return v.real();
  };

  std::vector<double> a;
  std::vector<double> b;
  for (std::int64_t k = 0; k <= max_index; ++k) {
    const double w = static_cast<double>(k) * std::numbers::pi / L;
    const Complex ak = coefficient_integral(k, [&] {
      return integrate([&](double x) { return Complex{real_f(x) * std::cos(w * x), 0.0}; }, -L, L,
                       spec, w);
    });
    a.push_back(ak.real() / L);
    if (k == 0) continue;
    const Complex bk = coefficient_integral(k, [&] {
      return integrate([&](double x) { return Complex{real_f(x) * std::sin(w * x), 0.0}; }, -L, L,
                       spec, w);
    });
    b.push_back(bk.real() / L);
  }
  return RealFourierCoefficientSet(L, std::move(a), std::move(b));
}

RealFourierCoefficientSet complex_to_real(const FourierCoefficientSet& coeffs, double tolerance) {
  const std::int64_t K = coeffs.max_index();
  double worst = 0.0;
  std::int64_t worst_k = 0;
  for (std::int64_t k = 0; k <= K; ++k) {
    const double gap = std::abs(coeffs[-k] - std::conj(coeffs[k]));
    if (gap > worst) {
      worst = gap;
      worst_k = k;
    }
  }
  if (worst > tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "coefficients are not conjugate-symmetric: |c_{-k} - conj(c_k)| = " << worst
       << " at k = " << worst_k;
    throw ContractViolation(os.str());
  }
  std::vector<double> a{2.0 * coeffs[0].real()};
  std::vector<double> b;
  for (std::int64_t k = 1; k <= K; ++k) {
    a.push_back((coeffs[k] + coeffs[-k]).real());
    b.push_back((Complex{0.0, -1.0} * (coeffs[k] - coeffs[-k])).real());
  }
  return RealFourierCoefficientSet(coeffs.half_length(), std::move(a), std::move(b));
}

ComplexMatrix gram_matrix(double half_length, std::int64_t max_index, const QuadratureSpec& spec) {
  require_half_length(half_length);
  require_max_index(max_index);
  const double L = half_length;
  const auto problem = EigenProblemSpec::periodic(L);
  const auto n = static_cast<std::size_t>(2 * max_index + 1);
  ComplexMatrix gram(n, n);
  for (std::int64_t k = -max_index; k <= max_index; ++k) {
    const auto yk = Eigenvalue::discrete(k, L);
    for (std::int64_t l = -max_index; l <= max_index; ++l) {
      const auto yl = Eigenvalue::discrete(l, L);
      gram(static_cast<std::size_t>(k + max_index), static_cast<std::size_t>(l + max_index)) =
          integrate(
              [&](double x) {
                return eigenfunction_eval(problem, yk, x) *
                       std::conj(eigenfunction_eval(problem, yl, x));
              },
              -L, L, spec, std::abs(static_cast<double>(k - l)) * std::numbers::pi / L);
    }
  }
  return gram;
}

GramSummary summarize_gram(const ComplexMatrix& gram, double half_length) {
  GramSummary s;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      if (i == j) {
        s.max_diagonal_deviation =
            std::max(s.max_diagonal_deviation, std::abs(gram(i, j) - 2.0 * half_length));
      } else {
        s.max_off_diagonal = std::max(s.max_off_diagonal, std::abs(gram(i, j)));
      }
    }
  }
  return s;
}

}  // namespace unitransform
