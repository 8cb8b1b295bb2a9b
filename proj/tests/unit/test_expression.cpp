#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reference_evaluator.hpp"
#include "unitransform/expression.hpp"

using namespace unitransform;
using expr::parse;

namespace {

double eval(const std::string& text, double x = 0.0) { return parse(text).evaluate(x); }

std::size_t error_offset(const std::string& text) {
  try {
    parse(text);
  } catch (const expr::ParseError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "no parse error for '" << text << "'";
  return std::string::npos;
}

}  // namespace

TEST(Parse, GaussianAtOrigin) { EXPECT_EQ(eval("exp(-x^2/2)", 0.0), 1.0); }

TEST(Parse, SineOfHalfPi) { EXPECT_NEAR(eval("sin(pi*x)", 0.5), 1.0, 1e-15); }

TEST(Parse, UnknownIdentifier) {
  EXPECT_EQ(error_offset("foo(x)"), 0u);
  EXPECT_EQ(error_offset("x + bar"), 4u);
  try {
    parse("foo(x)");
  } catch (const expr::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("foo"), std::string::npos);
  }
}

TEST(Evaluate, TwoVariables) { EXPECT_EQ(parse("x*exp(-t)").evaluate(2.0, 0.0), 2.0); }

TEST(Evaluate, DivisionByZeroNamesTheSubexpression) {
  try {
    eval("1/x", 0.0);
    FAIL();
  } catch (const expr::EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("'1/x'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(eval("1/(x-x)", 3.0), NumericalError);
}

TEST(Evaluate, Polynomial) { EXPECT_EQ(eval("x^2+3*x+1", 2.0), 11.0); }

TEST(Evaluate, MissingTIsAContractViolation) {
  const auto e = parse("x + t");
  EXPECT_TRUE(e.uses_t());
  EXPECT_THROW(e.evaluate(1.0), ContractViolation);
  EXPECT_EQ(e.evaluate(1.0, 2.0), 3.0);
  EXPECT_THROW(expr::as_function(e), ContractViolation);
  EXPECT_EQ(expr::as_function2d(e)(1.0, 2.0), Complex(3.0, 0.0));
}

TEST(Evaluate, DomainErrorsAreNotSilentNaN) {
  EXPECT_THROW(eval("log(x)", -1.0), expr::EvaluationError);
  EXPECT_THROW(eval("log(x)", 0.0), expr::EvaluationError);
  EXPECT_THROW(eval("sqrt(x)", -0.5), expr::EvaluationError);
  EXPECT_THROW(eval("x^0.5", -4.0), expr::EvaluationError);
  EXPECT_THROW(eval("exp(x)", 1000.0), expr::EvaluationError);
  EXPECT_EQ(eval("x^0.5", 4.0), 2.0);
  EXPECT_EQ(eval("x^3", -2.0), -8.0);
  EXPECT_EQ(eval("sqrt(x)", 0.0), 0.0);
}

TEST(Evaluate, FunctionsAndConstants) {
  EXPECT_EQ(eval("e"), std::numbers::e);
  EXPECT_EQ(eval("pi"), std::numbers::pi);
  EXPECT_EQ(eval("abs(x)", -3.5), 3.5);
  EXPECT_EQ(eval("cos(x)", 0.3), std::cos(0.3));
  EXPECT_EQ(eval("log(e)"), 1.0);
  EXPECT_EQ(eval("1.5e2 + .5"), 150.5);
}

TEST(Precedence, MultiplicationBeforeAddition) { EXPECT_EQ(eval("2+3*4"), 14.0); }

TEST(Precedence, PowerBindsTighterThanNegation) {
  EXPECT_EQ(eval("-x^2", 3.0), -9.0);
  EXPECT_EQ(eval("(-x)^2", 3.0), 9.0);
  EXPECT_EQ(eval("2^-1"), 0.5);
}

TEST(Precedence, Associativity) {
  EXPECT_EQ(eval("8-3-2"), 3.0);
  EXPECT_EQ(eval("24/4/3"), 2.0);
  EXPECT_EQ(eval("2^3^2"), 512.0);
}

TEST(Precedence, WhitespaceIsInsignificant) {
  EXPECT_EQ(parse(" x *  exp( - x ^ 2 ) "), parse("x*exp(-x^2)"));
}

TEST(Precedence, RandomizedAgainstReferenceEvaluator) {
  test_support::ExpressionGenerator gen(20241015u);
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    const std::string text = gen.next();
    for (double x : {-1.5, 0.5, 2.0}) {
      const double expected = test_support::reference_evaluate(text, x);
      if (!std::isfinite(expected)) {
        EXPECT_THROW(eval(text, x), expr::EvaluationError) << text;
        continue;
      }
      double actual = 0.0;
      try {
        actual = eval(text, x);
      } catch (const expr::EvaluationError&) {
        // Intermediate division by zero that the reference absorbed as +-inf.
        continue;
      }
      EXPECT_NEAR(actual, expected, 1e-9 * std::max(1.0, std::abs(expected))) << text << " at " << x;
      ++compared;
    }
  }
  EXPECT_GT(compared, 1000);
}

TEST(Printer, RoundTripIsStable) {
  test_support::ExpressionGenerator gen(7u);
  std::vector<std::string> texts = {"exp(-x^2/2)", "-x^2", "(-x)^2", "2^3^2", "(2^3)^2", "x-(t-1)",
                                    "x/(2*t)", "sin(pi*x)*exp(-t)", "-(-x)", "1e-3*x", "abs(-x)^2.5"};
  for (int i = 0; i < 200; ++i) texts.push_back(gen.next());
  for (const auto& text : texts) {
    const auto once = parse(text);
    const auto twice = parse(once.to_string());
    EXPECT_EQ(once, twice) << text << " -> " << once.to_string();
    EXPECT_EQ(twice.to_string(), once.to_string());
  }
}

TEST(Errors, PositionsForMalformedInput) {
  EXPECT_EQ(error_offset("(x+1"), 0u);
  EXPECT_EQ(error_offset("x+1)"), 3u);
  EXPECT_EQ(error_offset("sin()"), 4u);
  EXPECT_EQ(error_offset("sin x"), 4u);  // where the "(" should be
  EXPECT_EQ(error_offset("x^x"), 2u);
  EXPECT_EQ(error_offset("()"), 1u);
  EXPECT_EQ(error_offset(""), 0u);
  EXPECT_EQ(error_offset("2 $ 3"), 2u);
}

TEST(Errors, FuzzedInputNeverCrashesAndPositionsAreInRange) {
  const std::string alphabet = "x t()+-*/^.e0123456789 sinpcoqrtlgabf";
  std::mt19937 rng(99u);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> length(1, 14);
  int errors = 0;
  for (int i = 0; i < 5000; ++i) {
    std::string text;
    const int n = length(rng);
    for (int j = 0; j < n; ++j) text += alphabet[pick(rng)];
    try {
      const auto e = parse(text);
      try {
        e.evaluate(0.7, 0.3);
      } catch (const NumericalError&) {
      }
    } catch (const expr::ParseError& err) {
      ++errors;
      EXPECT_LT(err.offset(), text.size()) << "'" << text << "'";
    }
  }
  EXPECT_GT(errors, 1000);
}
