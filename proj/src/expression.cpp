#include "unitransform/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string_view>

namespace unitransform::expr {

namespace {

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string_view function_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::exp: return "exp";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::sqrt: return "sqrt";
    case UnaryOp::abs: return "abs";
    case UnaryOp::log: return "log";
    case UnaryOp::neg: return "-";
  }
  return "?";
}

int precedence(const Node& n) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Binary>) {
          return (v.op == BinaryOp::add || v.op == BinaryOp::sub) ? kPrecAdd : kPrecMul;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return v.op == UnaryOp::neg ? kPrecNeg : kPrecAtom;
        } else if constexpr (std::is_same_v<T, Power>) {
          return kPrecPow;
        } else if constexpr (std::is_same_v<T, Number>) {
          return v.value < 0.0 || std::signbit(v.value) ? kPrecNeg : kPrecAtom;
        } else {
          return kPrecAtom;
        }
      },
      n.data);
}

std::string print(const Node& n);

std::string wrap(const Node& n, bool parens) {
  return parens ? "(" + print(n) + ")" : print(n);
}

std::string print(const Node& n) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Number>) {
          return format_number(v.value);
        } else if constexpr (std::is_same_v<T, NamedConstant>) {
          return v.which == Constant::pi ? "pi" : "e";
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          return v.which == Variable::x ? "x" : "t";
        } else if constexpr (std::is_same_v<T, Unary>) {
          if (v.op == UnaryOp::neg) return "-" + wrap(*v.operand, precedence(*v.operand) < kPrecNeg);
          return std::string(function_name(v.op)) + "(" + print(*v.operand) + ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          const int p = (v.op == BinaryOp::add || v.op == BinaryOp::sub) ? kPrecAdd : kPrecMul;
          const char* sym = v.op == BinaryOp::add   ? "+"
                            : v.op == BinaryOp::sub ? "-"
                            : v.op == BinaryOp::mul ? "*"
                                                    : "/";
          return wrap(*v.lhs, precedence(*v.lhs) < p) + sym + wrap(*v.rhs, precedence(*v.rhs) <= p);
        } else {
          return wrap(*v.base, precedence(*v.base) < kPrecAtom) + "^" + format_number(v.exponent);
        }
      },
      n.data);
}

bool equal(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        const auto& vb = std::get<T>(b.data);
        if constexpr (std::is_same_v<T, Number>) {
          return va.value == vb.value;
        } else if constexpr (std::is_same_v<T, NamedConstant> || std::is_same_v<T, VariableRef>) {
          return va.which == vb.which;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return va.op == vb.op && equal(*va.operand, *vb.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return va.op == vb.op && equal(*va.lhs, *vb.lhs) && equal(*va.rhs, *vb.rhs);
        } else {
          return va.exponent == vb.exponent && equal(*va.base, *vb.base);
        }
      },
      a.data);
}

bool mentions(const Node& n, Variable var) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, VariableRef>) {
          return v.which == var;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return mentions(*v.operand, var);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return mentions(*v.lhs, var) || mentions(*v.rhs, var);
        } else if constexpr (std::is_same_v<T, Power>) {
          return mentions(*v.base, var);
        } else {
          return false;
        }
      },
      n.data);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

[[noreturn]] void fail(const std::string& what, const Node& at) {
  throw EvaluationError(what + " in '" + print(at) + "'");
}

double checked(double v, const Node& at) {
  if (!std::isfinite(v)) fail("non-finite result", at);
  return v;
}

double eval(const Node& n, double x, double t) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Number>) {
          return v.value;
        } else if constexpr (std::is_same_v<T, NamedConstant>) {
          return v.which == Constant::pi ? std::numbers::pi : std::numbers::e;
        } else if constexpr (std::is_same_v<T, VariableRef>) {
          return v.which == Variable::x ? x : t;
        } else if constexpr (std::is_same_v<T, Unary>) {
          const double a = eval(*v.operand, x, t);
          switch (v.op) {
            case UnaryOp::neg: return -a;
            case UnaryOp::exp: return checked(std::exp(a), n);
            case UnaryOp::sin: return std::sin(a);
            case UnaryOp::cos: return std::cos(a);
            case UnaryOp::abs: return std::abs(a);
            case UnaryOp::sqrt:
              if (a < 0.0) fail("square root of negative value", n);
              return std::sqrt(a);
            case UnaryOp::log:
              if (!(a > 0.0)) fail("logarithm of non-positive value", n);
              return std::log(a);
          }
          return a;
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double a = eval(*v.lhs, x, t);
          const double b = eval(*v.rhs, x, t);
          switch (v.op) {
            case BinaryOp::add: return checked(a + b, n);
            case BinaryOp::sub: return checked(a - b, n);
            case BinaryOp::mul: return checked(a * b, n);
            case BinaryOp::div:
              if (b == 0.0) fail("division by zero", n);
              return checked(a / b, n);
          }
          return a;
        } else {
          const double base = eval(*v.base, x, t);
          const bool integral = std::trunc(v.exponent) == v.exponent;
          if (!integral && !(base > 0.0)) fail("non-integer power of non-positive base", n);
          if (base == 0.0 && v.exponent < 0.0) fail("division by zero", n);
          return checked(std::pow(base, v.exponent), n);
        }
      },
      n.data);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

NodePtr make(auto&& value) { return std::make_shared<const Node>(Node{std::forward<decltype(value)>(value)}); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", 0);
    NodePtr root = parse_expression();
    skip_space();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return root;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::size_t end_offset() const { return text_.empty() ? 0 : text_.size() - 1; }

  NodePtr parse_expression() {
    NodePtr lhs = parse_term();
    while (true) {
      // Operands are parsed before the aggregate is built: g++ 11 does not
      // destroy already-initialized members when a braced initializer throws.
      BinaryOp op;
      if (accept('+')) {
        op = BinaryOp::add;
      } else if (accept('-')) {
        op = BinaryOp::sub;
      } else {
        return lhs;
      }
      NodePtr rhs = parse_term();
      lhs = make(Binary{op, std::move(lhs), std::move(rhs)});
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (true) {
      BinaryOp op;
      if (accept('*')) {
        op = BinaryOp::mul;
      } else if (accept('/')) {
        op = BinaryOp::div;
      } else {
        return lhs;
      }
      NodePtr rhs = parse_unary();
      lhs = make(Binary{op, std::move(lhs), std::move(rhs)});
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      NodePtr operand = parse_unary();
      return make(Unary{UnaryOp::neg, std::move(operand)});
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t exponent_start = std::min(pos_, end_offset());
    NodePtr exponent = parse_exponent();
    if (mentions(*exponent, Variable::x) || mentions(*exponent, Variable::t)) {
      throw ParseError("exponent must be a constant", exponent_start);
    }
    double value = 0.0;
    try {
      value = eval(*exponent, 0.0, 0.0);
    } catch (const EvaluationError& e) {
      throw ParseError(std::string("invalid constant exponent (") + e.what() + ")", exponent_start);
    }
    return make(Power{base, value});
  }

  NodePtr parse_exponent() {
    if (accept('-')) {
      NodePtr operand = parse_exponent();
      return make(Unary{UnaryOp::neg, std::move(operand)});
    }
    if (accept('+')) return parse_exponent();
    return parse_power();
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("expected an operand at end of input", end_offset());
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') throw ParseError("empty parentheses", pos_);
      NodePtr inner = parse_expression();
      if (!accept(')')) throw ParseError("unbalanced '(': missing ')'", open);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (c == ')') throw ParseError("unbalanced ')'", pos_);
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw ParseError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double value = std::strtod(literal.c_str(), &end);
    if (end != literal.c_str() + literal.size() || !std::isfinite(value)) {
      throw ParseError("malformed number '" + literal + "'", start);
    }
    return make(Number{value});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return make(VariableRef{Variable::x});
    if (name == "t") return make(VariableRef{Variable::t});
    if (name == "pi") return make(NamedConstant{Constant::pi});
    if (name == "e") return make(NamedConstant{Constant::e});

    static constexpr std::array<std::pair<std::string_view, UnaryOp>, 6> kFunctions{{
        {"exp", UnaryOp::exp},
        {"sin", UnaryOp::sin},
        {"cos", UnaryOp::cos},
        {"sqrt", UnaryOp::sqrt},
        {"abs", UnaryOp::abs},
        {"log", UnaryOp::log},
    }};
    for (const auto& [fname, op] : kFunctions) {
      if (name != fname) continue;
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '(') {
        throw ParseError("function '" + std::string(name) + "' requires parentheses",
                         std::min(pos_, end_offset()));
      }
      const std::size_t open = pos_++;
      skip_space();
      if (pos_ >= text_.size()) throw ParseError("unbalanced '(': missing ')'", open);
      if (text_[pos_] == ')') {
        throw ParseError("empty argument to '" + std::string(name) + "'", pos_);
      }
      NodePtr arg = parse_expression();
      if (!accept(')')) throw ParseError("unbalanced '(': missing ')'", open);
      return make(Unary{op, arg});
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }
};

}  // namespace

Expression::Expression(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw ContractViolation("expression needs a root node");
  uses_x_ = mentions(*root_, Variable::x);
  uses_t_ = mentions(*root_, Variable::t);
}

double Expression::evaluate(double x, std::optional<double> t) const {
  if (uses_t_ && !t) throw ContractViolation("expression '" + to_string() + "' needs a value for t");
  return eval(*root_, x, t.value_or(0.0));
}

std::string Expression::to_string() const { return print(*root_); }

bool operator==(const Expression& lhs, const Expression& rhs) { return equal(*lhs.root_, *rhs.root_); }

Expression parse(const std::string& text) { return Expression(Parser(text).parse_all()); }

ComplexFunction as_function(const Expression& e) {
  if (e.uses_t()) throw ContractViolation("expression '" + e.to_string() + "' depends on t");
  return [e](double x) { return Complex{e.evaluate(x), 0.0}; };
}

ComplexFunction2D as_function2d(const Expression& e) {
  return [e](double x, double t) { return Complex{e.evaluate(x, t), 0.0}; };
}

}  // namespace unitransform::expr
