#pragma once

// Real-valued expressions in x and t.
//
//   expression := term (('+' | '-') term)*
//   term       := unary (('*' | '/') unary)*
//   unary      := ('-' | '+') unary | power
//   power      := primary ('^' exponent)?
//   exponent   := ('-' | '+') exponent | power        (must fold to a constant)
//   primary    := number | 'x' | 't' | 'pi' | 'e' | '(' expression ')'
//               | function '(' expression ')'
//   function   := exp | sin | cos | sqrt | abs | log
//
// so "^" binds tighter than unary minus ("-x^2" is -(x^2)) and is right
// associative. Whitespace is ignored.

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "unitransform/errors.hpp"
#include "unitransform/numerics.hpp"

namespace unitransform::expr {

/// Malformed input; offset() is a character index into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Domain error or non-finite value during evaluation.
class EvaluationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

enum class UnaryOp { neg, exp, sin, cos, sqrt, abs, log };
enum class BinaryOp { add, sub, mul, div };
enum class Constant { pi, e };
enum class Variable { x, t };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
  double value;
};
struct NamedConstant {
  Constant which;
};
struct VariableRef {
  Variable which;
};
struct Unary {
  UnaryOp op;
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Power {
  NodePtr base;
  double exponent;
};

struct Node {
  std::variant<Number, NamedConstant, VariableRef, Unary, Binary, Power> data;
};

/// Immutable parsed expression; cheap to copy and safe to share across threads.
class Expression {
 public:
  explicit Expression(NodePtr root);

  const Node& root() const noexcept { return *root_; }
  bool uses_x() const noexcept { return uses_x_; }
  bool uses_t() const noexcept { return uses_t_; }

  /// Throws ContractViolation when the expression uses t and none is given.
  double evaluate(double x, std::optional<double> t = std::nullopt) const;

  /// Canonical text; parse(e.to_string()) == e.
  std::string to_string() const;

  friend bool operator==(const Expression& lhs, const Expression& rhs);

 private:
  NodePtr root_;
  bool uses_x_;
  bool uses_t_;
};

Expression parse(const std::string& text);

inline double evaluate(const Expression& e, double x, std::optional<double> t = std::nullopt) {
  return e.evaluate(x, t);
}

/// f(x) as a complex-valued integrand (t not allowed).
ComplexFunction as_function(const Expression& e);
/// f(x, t).
ComplexFunction2D as_function2d(const Expression& e);

}  // namespace unitransform::expr
