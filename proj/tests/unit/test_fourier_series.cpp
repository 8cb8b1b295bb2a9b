#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "unitransform/errors.hpp"
#include "unitransform/fourier_series.hpp"

using namespace unitransform;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

ComplexFunction real_fn(double (*f)(double)) {
  return [f](double x) { return Complex{f(x), 0.0}; };
}

}  // namespace

TEST(ComplexCoefficients, ConstantFunction) {
  const auto c = complex_coefficients([](double) { return Complex{1.0, 0.0}; }, 1.0, 2);
  EXPECT_NEAR(std::abs(c[0] - 1.0), 0.0, 1e-14);
  for (std::int64_t k : {-2, -1, 1, 2}) EXPECT_NEAR(std::abs(c[k]), 0.0, 1e-14) << k;
}

TEST(ComplexCoefficients, SingleEigenfunction) {
  const auto c = complex_coefficients([](double x) { return std::exp(-kI * kPi * x); }, 1.0, 2);
  EXPECT_NEAR(std::abs(c[1] - 1.0), 0.0, 1e-14);
  for (std::int64_t k : {-2, -1, 0, 2}) EXPECT_NEAR(std::abs(c[k]), 0.0, 1e-14) << k;
}

// Integration by parts: c_k = 1/2 int_{-1}^{1} x e^{i k pi x} dx = -i (-1)^k / (k pi).
TEST(ComplexCoefficients, Sawtooth) {
  const auto c = complex_coefficients([](double x) { return Complex{x, 0.0}; }, 1.0, 3);
  EXPECT_NEAR(std::abs(c[0]), 0.0, 1e-14);
  for (std::int64_t k : {-3, -2, -1, 1, 2, 3}) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const Complex expected = -kI * sign / (static_cast<double>(k) * kPi);
    EXPECT_NEAR(std::abs(c[k] - expected), 0.0, 1e-12) << k;
  }
  EXPECT_NEAR(c[1].imag(), 0.3183098861837907, 1e-12);
}

TEST(ComplexCoefficients, OutOfRangeIndexIsZero) {
  const FourierCoefficientSet c(1.0, {Complex{1.0, 0.0}});
  EXPECT_EQ(c[5], Complex{});
  EXPECT_EQ(c.max_index(), 0);
}

TEST(ComplexCoefficients, ValidatesArguments) {
  const ComplexFunction one = [](double) { return Complex{1.0, 0.0}; };
  EXPECT_THROW(complex_coefficients(one, 0.0, 2), ContractViolation);
  EXPECT_THROW(complex_coefficients(one, 1.0, -1), ContractViolation);
  EXPECT_THROW(FourierCoefficientSet(1.0, std::vector<Complex>(2)), ContractViolation);
}

TEST(ComplexCoefficients, NamesTheFailingIndex) {
  try {
    complex_coefficients([](double x) { return Complex{1.0 / (x - 0.0), 0.0}; }, 1.0, 1);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("k = -1"), std::string::npos) << e.what();
  }
}

TEST(Synthesize, ConstantSeries) {
  const FourierCoefficientSet c(1.0, {Complex{1.0, 0.0}});
  for (double x : {-1.0, 0.0, 0.37}) EXPECT_EQ(synthesize(c, x), Complex(1.0, 0.0));
}

TEST(Synthesize, SingleTerm) {
  const FourierCoefficientSet c(1.0, {Complex{}, Complex{}, Complex{1.0, 0.0}});
  EXPECT_EQ(synthesize(c, 0.5), Complex(0.0, -1.0));
}

TEST(Synthesize, SawtoothPartialSum) {
  const auto c = complex_coefficients([](double x) { return Complex{x, 0.0}; }, 1.0, 64);
  // Oracle: the real partial sum sum_k 2 (-1)^{k+1} sin(k pi x) / (k pi).
  double oracle = 0.0;
  for (int k = 1; k <= 64; ++k) oracle += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::sin(k * kPi * 0.3) / (k * kPi);
  const Complex s = synthesize(c, 0.3);
  EXPECT_NEAR(s.real(), oracle, 1e-10);
  EXPECT_NEAR(s.real(), 0.3, 5e-3);
  EXPECT_THROW(synthesize(c, 1.5), ContractViolation);
}

TEST(Synthesize, RoundTripAnalyticPeriodic) {
  for (double L : {1.0, 2.5}) {
    const ComplexFunction f = [L](double x) { return Complex{std::exp(std::cos(kPi * x / L)), 0.0}; };
    const auto c = complex_coefficients(f, L, 32);
    double err = 0.0;
    const Grid xs = Grid::uniform(-L, L, 101);
    for (double x : xs.points()) err = std::max(err, std::abs(synthesize(c, x) - f(x)));
    EXPECT_LE(err, 1e-8) << L;
  }
}

TEST(RealCoefficients, Sine) {
  const auto r = real_coefficients([](double x) { return Complex{std::sin(kPi * x), 0.0}; }, 1.0, 1);
  EXPECT_NEAR(r.a(0), 0.0, 1e-14);
  EXPECT_NEAR(r.a(1), 0.0, 1e-14);
  EXPECT_NEAR(r.b(1), 1.0, 1e-14);
}

TEST(RealCoefficients, Cosine) {
  const auto r = real_coefficients([](double x) { return Complex{std::cos(2 * kPi * x), 0.0}; }, 1.0, 2);
  EXPECT_NEAR(r.a(2), 1.0, 1e-14);
  for (std::int64_t k : {0, 1}) EXPECT_NEAR(r.a(k), 0.0, 1e-14);
  for (std::int64_t k : {1, 2}) EXPECT_NEAR(r.b(k), 0.0, 1e-14);
}

TEST(RealCoefficients, Parabola) {
  const auto r = real_coefficients([](double x) { return Complex{x * x, 0.0}; }, 1.0, 2);
  EXPECT_NEAR(r.a(0), 2.0 / 3.0, 1e-13);
  for (std::int64_t k : {1, 2}) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    EXPECT_NEAR(r.a(k), 4.0 * sign / (k * k * kPi * kPi), 1e-13);
    EXPECT_NEAR(r.b(k), 0.0, 1e-14);
  }
  EXPECT_NEAR(r.synthesize(0.0), 2.0 / 6.0 - 4.0 / (kPi * kPi) + 1.0 / (kPi * kPi), 1e-13);
}

TEST(RealCoefficients, RejectsComplexInput) {
  EXPECT_THROW(real_coefficients([](double x) { return Complex{x, 1.0}; }, 1.0, 2), ContractViolation);
  EXPECT_THROW(RealFourierCoefficientSet(1.0, {1.0, 2.0}, {}), ContractViolation);
  const RealFourierCoefficientSet r(1.0, {1.0}, {});
  EXPECT_EQ(r.b(0), 0.0);  // b_0 does not exist
}

TEST(ComplexToReal, SineCoefficients) {
  const FourierCoefficientSet c(1.0, {Complex{0.0, -0.5}, Complex{}, Complex{0.0, 0.5}});
  const auto r = complex_to_real(c);
  EXPECT_NEAR(r.b(1), 1.0, 1e-15);
  EXPECT_NEAR(r.a(1), 0.0, 1e-15);
}

TEST(ComplexToReal, Constant) {
  EXPECT_EQ(complex_to_real(FourierCoefficientSet(1.0, {Complex{3.0, 0.0}})).a(0), 6.0);
}

TEST(ComplexToReal, EvenPair) {
  const auto r = complex_to_real(FourierCoefficientSet(1.0, {Complex{1.0, 0.0}, Complex{}, Complex{1.0, 0.0}}));
  EXPECT_EQ(r.a(1), 2.0);
  EXPECT_EQ(r.b(1), 0.0);
}

TEST(ComplexToReal, NamesWorstAsymmetricIndex) {
  const FourierCoefficientSet c(1.0, {Complex{0.0, 0.0}, Complex{1.0, 1e-9}, Complex{}, Complex{1.0, 0.0},
                                      Complex{0.0, 1.0}});
  try {
    complex_to_real(c);
    FAIL();
  } catch (const ContractViolation& e) {
    EXPECT_NE(std::string(e.what()).find("k = 2"), std::string::npos) << e.what();
  }
}

TEST(ComplexToReal, MatchesDirectRealCoefficients) {
  for (auto f : {+[](double x) { return x * x; }, +[](double x) { return x * x * x; },
                 +[](double x) { return std::exp(x) * std::sin(3 * x); }}) {
    const auto bridged = complex_to_real(complex_coefficients(real_fn(f), 1.0, 12));
    const auto direct = real_coefficients(real_fn(f), 1.0, 12);
    for (std::int64_t k = 0; k <= 12; ++k) {
      EXPECT_NEAR(bridged.a(k), direct.a(k), 1e-9) << k;
      if (k > 0) EXPECT_NEAR(bridged.b(k), direct.b(k), 1e-9) << k;
    }
  }
}

TEST(Properties, ConjugateSymmetryForRealInput) {
  const auto c = complex_coefficients(real_fn([](double x) { return std::exp(x) + x * x * x; }), 1.5, 10);
  for (std::int64_t k = 0; k <= 10; ++k) EXPECT_NEAR(std::abs(c[-k] - std::conj(c[k])), 0.0, 1e-10) << k;
}

TEST(Properties, ParsevalForTrigonometricPolynomial) {
  const ComplexFunction f = [](double x) {
    return Complex{1.0 + 2.0 * std::cos(kPi * x) - 0.5 * std::sin(3.0 * kPi * x), 0.0};
  };
  const auto c = complex_coefficients(f, 1.0, 4);
  double energy = 0.0;
  for (std::int64_t k = -4; k <= 4; ++k) energy += std::norm(c[k]);
  const double mean_square =
      integrate([&](double x) { return Complex{std::norm(f(x)), 0.0}; }, -1.0, 1.0, {}).real() / 2.0;
  EXPECT_NEAR(energy, mean_square, 1e-10);
  EXPECT_NEAR(energy, 1.0 + 2.0 + 0.125, 1e-10);
}

TEST(Properties, Linearity) {
  const ComplexFunction f = [](double x) { return Complex{x * x, 0.0}; };
  const ComplexFunction g = [](double x) { return std::exp(kI * x); };
  const Complex a{0.5, -2.0};
  const auto cf = complex_coefficients(f, 1.0, 5);
  const auto cg = complex_coefficients(g, 1.0, 5);
  const auto combo = complex_coefficients([&](double x) { return a * f(x) + g(x); }, 1.0, 5);
  for (std::int64_t k = -5; k <= 5; ++k) EXPECT_NEAR(std::abs(combo[k] - (a * cf[k] + cg[k])), 0.0, 1e-12);
}

TEST(Gram, UnitInterval) {
  const auto g = gram_matrix(1.0, 2);
  const auto s = summarize_gram(g, 1.0);
  EXPECT_LE(s.max_diagonal_deviation, 1e-10);
  EXPECT_LE(s.max_off_diagonal, 1e-10);
  EXPECT_NEAR(g(2, 2).real(), 2.0, 1e-14);
}

TEST(Gram, WiderInterval) {
  const auto g = gram_matrix(3.0, 1);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(g(i, i) - 6.0), 0.0, 1e-12);
}

TEST(Gram, SingleConstant) {
  const auto g = gram_matrix(2.0, 0);
  ASSERT_EQ(g.rows(), 1u);
  EXPECT_NEAR(std::abs(g(0, 0) - 4.0), 0.0, 1e-14);
}
