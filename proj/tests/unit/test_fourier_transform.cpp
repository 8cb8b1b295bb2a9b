#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "unitransform/errors.hpp"
#include "unitransform/fourier_transform.hpp"

using namespace unitransform;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

const ComplexFunction gaussian = [](double x) { return Complex{std::exp(-x * x / 2.0), 0.0}; };

// Closed form under F(l) = 1/(2pi) int f e^{i l x}: e^{-l^2/2} / sqrt(2pi).
double gaussian_spectrum(double lambda) { return std::exp(-lambda * lambda / 2.0) * kInvSqrt2Pi; }

}  // namespace

TEST(ForwardFt, GaussianAtZero) {
  EXPECT_NEAR(std::abs(forward_ft_at(gaussian, 0.0, 12.0) - kInvSqrt2Pi), 0.0, 1e-12);
  EXPECT_NEAR(kInvSqrt2Pi, 0.39894, 1e-5);
}

TEST(ForwardFt, GaussianAtOne) {
  const Complex F = forward_ft_at(gaussian, 1.0, 12.0);
  EXPECT_NEAR(std::abs(F - gaussian_spectrum(1.0)), 0.0, 1e-12);
  EXPECT_NEAR(F.real(), 0.24197, 1e-5);
}

TEST(ForwardFt, OddRealFunctionVanishesAtZero) {
  const ComplexFunction f = [](double x) { return Complex{x * std::exp(-x * x), 0.0}; };
  EXPECT_NEAR(std::abs(forward_ft_at(f, 0.0, 10.0)), 0.0, 1e-15);
}

TEST(ForwardFt, MatchesClosedFormOnAGrid) {
  const Grid lambdas = Grid::uniform(-6.0, 6.0, 49);
  const ContinuousSpectrum s = forward_ft(gaussian, lambdas, 12.0);
  EXPECT_EQ(s.convention(), "paper-fourier");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    EXPECT_NEAR(std::abs(s.values()[i] - gaussian_spectrum(lambdas[i])), 0.0, 1e-12) << lambdas[i];
  }
}

// The analysis kernel e^{+i l x} gives F[f(x - h)](l) = e^{i l h} F[f](l).
TEST(ForwardFt, ShiftProperty) {
  const double h = 0.7;
  const ComplexFunction shifted = [h](double x) { return gaussian(x - h); };
  for (double lambda : {-3.0, 0.5, 2.0}) {
    const Complex lhs = forward_ft_at(shifted, lambda, 14.0);
    const Complex rhs = std::exp(kI * lambda * h) * forward_ft_at(gaussian, lambda, 14.0);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-8) << lambda;
  }
}

TEST(ForwardFt, Linearity) {
  const ComplexFunction g = [](double x) { return Complex{0.0, std::exp(-std::abs(x))}; };
  const Complex a{3.0, 1.0};
  for (double lambda : {0.0, 1.5}) {
    const Complex lhs = forward_ft_at([&](double x) { return a * gaussian(x) + g(x); }, lambda, 20.0);
    const Complex rhs = a * forward_ft_at(gaussian, lambda, 20.0) + forward_ft_at(g, lambda, 20.0);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10);
  }
}

TEST(ForwardFt, ValidatesArguments) {
  EXPECT_THROW(forward_ft_at(gaussian, 0.0, 0.0), ContractViolation);
  EXPECT_THROW(forward_ft_at([](double) { return Complex{INFINITY, 0.0}; }, 0.0, 1.0), NumericalError);
}

TEST(InverseFt, GaussianRoundTripAtOrigin) {
  const ContinuousSpectrum s = forward_ft(gaussian, Grid::uniform(-12.0, 12.0, 481), 12.0);
  const SampledFunction f = inverse_ft(s, Grid::uniform(0.0, 0.0, 1));
  EXPECT_NEAR(std::abs(f.values()[0] - 1.0), 0.0, 1e-6);
}

TEST(InverseFt, ZeroSpectrum) {
  const Grid lambdas = Grid::uniform(-5.0, 5.0, 101);
  const SampledFunction f =
      inverse_ft(ContinuousSpectrum(lambdas, std::vector<Complex>(lambdas.size())), Grid::uniform(-1.0, 1.0, 5));
  for (const Complex v : f.values()) EXPECT_EQ(v, Complex{});
}

TEST(InverseFt, ClosedFormSpectrum) {
  const Grid lambdas = Grid::uniform(-12.0, 12.0, 481);
  std::vector<Complex> values;
  for (double l : lambdas.points()) values.emplace_back(gaussian_spectrum(l), 0.0);
  const SampledFunction f = inverse_ft(ContinuousSpectrum(lambdas, values), Grid::uniform(1.0, 1.0, 1));
  EXPECT_NEAR(f.values()[0].real(), std::exp(-0.5), 1e-10);
  EXPECT_NEAR(std::exp(-0.5), 0.60653, 1e-5);
}

TEST(InverseFt, RoundTripOnAnInterval) {
  const ContinuousSpectrum s = forward_ft(gaussian, Grid::uniform(-12.0, 12.0, 481), 12.0);
  const Grid xs = Grid::uniform(-3.0, 3.0, 61);
  const SampledFunction f = inverse_ft(s, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(std::abs(f.values()[i] - gaussian(xs[i])), 0.0, 1e-6);
}

TEST(InverseFt, CoarseGridAliases) {
  const ContinuousSpectrum s = forward_ft(gaussian, Grid::uniform(-12.0, 12.0, 49), 12.0);
  EXPECT_THROW(inverse_ft(s, Grid::uniform(-3.0, 3.0, 7)), AliasingError);
  EXPECT_NO_THROW(inverse_ft(s, Grid::uniform(-1.5, 1.5, 7)));
}

TEST(InverseFt, TruncatedSpectrumIsRejected) {
  const ContinuousSpectrum s = forward_ft(gaussian, Grid::uniform(-2.0, 2.0, 81), 12.0);
  EXPECT_THROW(inverse_ft(s, Grid::uniform(-1.0, 1.0, 3)), TruncationError);
}

TEST(InverseFt, GaussNodesUseTheirWeights) {
  QuadratureSpec gl;
  gl.method = QuadratureMethod::gauss_legendre;
  const Grid lambdas = Grid::gauss_legendre(-12.0, 12.0, 200);
  std::vector<Complex> values;
  for (double l : lambdas.points()) values.emplace_back(gaussian_spectrum(l), 0.0);
  const SampledFunction f = inverse_ft(ContinuousSpectrum(lambdas, values), Grid::uniform(0.5, 0.5, 1), gl);
  EXPECT_NEAR(f.values()[0].real(), std::exp(-0.125), 1e-10);
  EXPECT_THROW(sample_weights(Grid::uniform(0.0, 1.0, 3), gl), ContractViolation);
}

TEST(DirichletDelta, Limit) { EXPECT_NEAR(dirichlet_delta(0.0, 10.0), 10.0 / kPi, 1e-15); }

TEST(DirichletDelta, Zero) { EXPECT_NEAR(dirichlet_delta(kPi / 10.0, 10.0), 0.0, 1e-15); }

TEST(DirichletDelta, MatchesDefiningIntegral) {
  EXPECT_NEAR(dirichlet_delta(1.0, 20.0), std::sin(20.0) / kPi, 1e-15);
  EXPECT_NEAR(dirichlet_delta(1.0, 20.0), 0.2906, 1e-4);
  for (double a : {1.0, -0.3, 2e-13}) {
    const Complex q = integrate([a](double x) { return std::exp(-kI * a * x); }, -20.0, 20.0, {}, std::abs(a));
    EXPECT_NEAR(std::abs(q / (2.0 * kPi) - dirichlet_delta(a, 20.0)), 0.0, 1e-12) << a;
  }
  EXPECT_THROW(dirichlet_delta(1.0, -1.0), ContractViolation);
}

TEST(Sifting, GaussianAtOrigin) {
  const ComplexFunction g = [](double l) { return Complex{std::exp(-l * l), 0.0}; };
  EXPECT_NEAR(std::abs(sifting_integral(g, 0.0, 50.0, 8.0) - 1.0), 0.0, 1e-3);
}

TEST(Sifting, ImprovesAsTruncationGrows) {
  // For g = 1/(1 + l^2) the error decays like e^{-A}.
  const ComplexFunction g = [](double l) { return Complex{1.0 / (1.0 + l * l), 0.0}; };
  const double e1 = std::abs(sifting_integral(g, 0.0, 2.0, 200.0) - 1.0);
  const double e2 = std::abs(sifting_integral(g, 0.0, 6.0, 200.0) - 1.0);
  EXPECT_LT(e2, e1);
}

TEST(Sifting, OffCentre) {
  const ComplexFunction g = [](double l) { return Complex{std::exp(-(l - 1.0) * (l - 1.0)), 0.0}; };
  EXPECT_NEAR(sifting_integral(g, 0.5, 60.0, 8.0).real(), std::exp(-0.25), 1e-3);
}

TEST(WindowedNorm, GrowsLinearly) {
  for (double lambda : {0.0, 3.0}) {
    for (double A : {1.0, 10.0, 100.0}) EXPECT_NEAR(windowed_norm_squared(lambda, A), 2.0 * A, 1e-12 * A);
  }
}

TEST(AntiAliasing, Threshold) {
  const Grid lambdas = Grid::uniform(-1.0, 1.0, 21);  // spacing 0.1
  EXPECT_NO_THROW(check_anti_aliasing(lambdas, Grid::uniform(-7.8, 7.8, 3)));
  EXPECT_THROW(check_anti_aliasing(lambdas, Grid::uniform(-7.9, 7.9, 3)), AliasingError);
}
