#include "unitransform/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "unitransform/eigenframe.hpp"
#include "unitransform/errors.hpp"
#include "unitransform/expression.hpp"
#include "unitransform/formats.hpp"
#include "unitransform/fourier_laplace.hpp"
#include "unitransform/fourier_series.hpp"
#include "unitransform/fourier_transform.hpp"
#include "unitransform/laplace.hpp"

namespace unitransform::cli {

namespace {

using io::Json;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Invalid request tied to one option.
class FieldError : public ContractViolation {
 public:
  FieldError(std::string field, const std::string& message)
      : ContractViolation(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public FieldError {
 public:
  using FieldError::FieldError;
};

/// Verification ran but its criterion failed; the report is still written.
class VerificationFailed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// --strict turned a warning into a failure.
class StrictWarning : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::optional<double> parse_decimal(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

/// Decimal, or [coef][*]pi[/denom] such as "0.5pi", "-pi/2", "2*pi".
std::optional<double> parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_decimal(s);
  std::string coef = s.substr(0, pos);
  std::string rest = s.substr(pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double c = 1.0;
  if (coef == "-") {
    c = -1.0;
  } else if (!coef.empty() && coef != "+") {
    const auto v = parse_decimal(coef);
    if (!v) return std::nullopt;
    c = *v;
  }
  double d = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') return std::nullopt;
    const auto v = parse_decimal(rest.substr(1));
    if (!v || *v == 0.0) return std::nullopt;
    d = *v;
  }
  return c * kPi / d;
}

/// "a", "bi", "a+bi", "a-bi"; each part accepts the pi syntax.
std::optional<Complex> parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  const bool imaginary = s.back() == 'i' && (s.size() < 2 || s[s.size() - 2] != 'p' ||
                                             (s.size() >= 3 && s.substr(s.size() - 3) == "pii"));
  if (!imaginary) {
    const auto re = parse_number(s);
    if (!re) return std::nullopt;
    return Complex{*re, 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag_part = [](const std::string& t) -> std::optional<double> {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_number(t);
  };
  if (split_at == std::string::npos) {
    const auto im = imag_part(body);
    if (!im) return std::nullopt;
    return Complex{0.0, *im};
  }
  const auto re = parse_number(body.substr(0, split_at));
  const auto im = imag_part(body.substr(split_at));
  if (!re || !im) return std::nullopt;
  return Complex{*re, *im};
}

/// Parsed option values plus an ordered echo of everything consulted.
class Request {
 public:
  Request(std::string command, std::map<std::string, std::string> raw)
      : command_(std::move(command)), raw_(std::move(raw)) {}

  const std::string& command() const noexcept { return command_; }
  bool has(const std::string& name) const { return raw_.count(name) > 0; }

  std::string text(const std::string& name, std::optional<std::string> fallback = std::nullopt) {
    const std::string v = lookup(name, fallback ? std::optional<std::string>(*fallback) : std::nullopt);
    echo_[name] = v;
    return v;
  }

  double real(const std::string& name, std::optional<double> fallback = std::nullopt) {
    if (!has(name) && fallback) {
      echo_[name] = *fallback;
      return *fallback;
    }
    const std::string v = lookup(name, std::nullopt);
    const auto parsed = parse_number(v);
    if (!parsed) throw FieldError(name, "--" + name + ": cannot parse '" + v + "' as a number");
    echo_[name] = *parsed;
    return *parsed;
  }

  double positive(const std::string& name, std::optional<double> fallback = std::nullopt) {
    const double v = real(name, fallback);
    if (!(v > 0.0)) throw FieldError(name, "--" + name + " must be positive");
    return v;
  }

  std::int64_t integer(const std::string& name, std::optional<std::int64_t> fallback = std::nullopt,
                       std::int64_t minimum = 0) {
    std::int64_t value = 0;
    if (!has(name) && fallback) {
      value = *fallback;
    } else {
      const std::string v = trim(lookup(name, std::nullopt));
      std::size_t used = 0;
      try {
        value = std::stoll(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != v.size()) {
        throw FieldError(name, "--" + name + ": cannot parse '" + v + "' as an integer");
      }
    }
    if (value < minimum) {
      throw FieldError(name, "--" + name + " must be at least " + std::to_string(minimum));
    }
    echo_[name] = value;
    return value;
  }

  std::vector<Complex> complex_list(const std::string& name) {
    const std::string v = lookup(name, std::nullopt);
    std::vector<Complex> out;
    Json arr = Json::array();
    for (const auto& part : split(v, ',')) {
      const auto c = parse_complex(part);
      if (!c) throw FieldError(name, "--" + name + ": cannot parse '" + trim(part) + "' as a complex number");
      out.push_back(*c);
      arr.push_back(io::complex_pair(*c));
    }
    echo_[name] = std::move(arr);
    return out;
  }

  /// "[gauss:]a:b:n" or an explicit comma-separated list.
  Grid grid(const std::string& name, std::optional<std::string> fallback = std::nullopt) {
    const std::string v = trim(lookup(name, fallback));
    try {
      Grid g = make_grid(v, name);
      echo_[name] = v;
      return g;
    } catch (const FieldError&) {
      throw;
    } catch (const ContractViolation& e) {
      throw FieldError(name, "--" + name + ": " + e.what());
    }
  }

  bool flag(const std::string& name) {
    const bool v = has(name);
    echo_[name] = v;
    return v;
  }

  Json& echo() { return echo_; }

  std::string parsing = "expr";  // option whose expression is being parsed

 private:
  std::string lookup(const std::string& name, const std::optional<std::string>& fallback) const {
    const auto it = raw_.find(name);
    if (it != raw_.end()) return it->second;
    if (fallback) return *fallback;
    throw FieldError(name, command_ + ": missing required option --" + name);
  }

  static Grid make_grid(const std::string& v, const std::string& name) {
    const auto bad = [&]() {
      return FieldError(name, "--" + name + ": expected [gauss:]a:b:n or a comma-separated list, got '" + v + "'");
    };
    if (v.find(':') == std::string::npos) {
      std::vector<double> pts;
      for (const auto& part : split(v, ',')) {
        const auto x = parse_number(part);
        if (!x) throw bad();
        pts.push_back(*x);
      }
      return Grid::from_points(std::move(pts));
    }
    std::vector<std::string> parts = split(v, ':');
    bool gauss = false;
    if (parts.size() == 4 && trim(parts[0]) == "gauss") {
      gauss = true;
      parts.erase(parts.begin());
    }
    if (parts.size() != 3) throw bad();
    const auto a = parse_number(parts[0]);
    const auto b = parse_number(parts[1]);
    const auto n = parse_decimal(trim(parts[2]));
    if (!a || !b || !n || *n < 1 || *n != std::floor(*n) || *n > 1e7) throw bad();
    const auto count = static_cast<std::size_t>(*n);
    return gauss ? Grid::gauss_legendre(*a, *b, count) : Grid::uniform(*a, *b, count);
  }

  std::string command_;
  std::map<std::string, std::string> raw_;
  Json echo_ = Json::object();
};

/// What a command produced: a JSON document (with its CSV rendering when the
/// data has one) and an optional deferred failure.
struct Outcome {
  Json doc;
  std::optional<std::string> csv;
  std::vector<std::string> warnings;
  std::optional<std::string> failure;  // verification failure, exit 2 after writing
};

struct Context {
  Request& req;
  QuadratureSpec quad;
  bool strict = false;
  BromwichOptions bromwich;
  Json diagnostics = Json::object();
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("input", "cannot open input file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw io::FormatError("input file '" + path + "' is not valid JSON: " + e.what());
  }
}

/// Exactly one of --expr / --input.
enum class Source { expression, file };

Source source_of(Request& req) {
  const bool e = req.has("expr");
  const bool f = req.has("input");
  if (e == f) {
    throw FieldError(e ? "input" : "expr", req.command() + ": give exactly one of --expr and --input");
  }
  return e ? Source::expression : Source::file;
}

expr::Expression expression(Request& req, const std::string& name) {
  const std::string text = req.text(name);
  req.parsing = name;
  expr::Expression e = expr::parse(text);
  req.echo()[name + "_canonical"] = e.to_string();
  return e;
}

/// One-variable integrand: the expression may use x, or t alone.
ComplexFunction function_1d(const expr::Expression& e, const std::string& field) {
  if (e.uses_x() && e.uses_t()) {
    throw FieldError(field, "expression '" + e.to_string() + "' must depend on one variable");
  }
  if (e.uses_t()) return [e](double v) { return Complex{e.evaluate(0.0, v), 0.0}; };
  return expr::as_function(e);
}

SampledFunction input_function(Request& req) {
  return io::read_function_file(read_json_file(req.text("input")));
}

SampledFunction sample(const ComplexFunction& f, const Grid& grid) {
  std::vector<Complex> values;
  values.reserve(grid.size());
  for (double x : grid.points()) values.push_back(f(x));
  return SampledFunction(grid, std::move(values));
}

Json quadrature_json(const QuadratureSpec& q) {
  Json j = Json::object();
  j["method"] = to_string(q.method);
  j["order"] = q.order;
  j["panels"] = q.panels;
  j["tolerance"] = q.tolerance;
  return j;
}

void require_span(const Grid& grid, double a, double b, const std::string& what) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(grid.front() - a) > 1e-9 * scale || std::abs(grid.back() - b) > 1e-9 * scale) {
    throw FieldError("input", what);
  }
}

// ---------------------------------------------------------------- series

FourierCoefficientSet sampled_coefficients(const SampledFunction& f, double L, std::int64_t K) {
  require_span(f.grid(), -L, L, "input grid must span [-L, L]");
  check_anti_aliasing(f.grid(), Grid::uniform(-K * kPi / L, K * kPi / L, K > 0 ? 2 : 1));
  std::vector<Complex> c;
  std::vector<Complex> prod(f.size());
  for (std::int64_t k = -K; k <= K; ++k) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      prod[i] = f.values()[i] * unit_phase_pi(static_cast<double>(k) * f.grid()[i] / L);
    }
    c.push_back(integrate_samples(f.grid(), prod) / (2.0 * L));
  }
  return FourierCoefficientSet(L, std::move(c));
}

FourierCoefficientSet series_coefficients(Context& ctx, double& L, std::int64_t& K) {
  Request& req = ctx.req;
  const Source src = source_of(req);
  L = req.positive("L");
  K = req.integer("K");
  if (src == Source::expression) {
    return complex_coefficients(function_1d(expression(req, "expr"), "expr"), L, K, ctx.quad);
  }
  return sampled_coefficients(input_function(req), L, K);
}

Outcome cmd_series(Context& ctx) {
  double L = 0.0;
  std::int64_t K = 0;
  const FourierCoefficientSet c = series_coefficients(ctx, L, K);
  return {io::coefficient_file(c), io::to_csv(c), {}, {}};
}

Outcome cmd_real_series(Context& ctx) {
  Request& req = ctx.req;
  const Source src = source_of(req);
  RealFourierCoefficientSet result(1.0, {0.0}, {});
  if (src == Source::expression) {
    const double L = req.positive("L");
    const std::int64_t K = req.integer("K");
    result = real_coefficients(function_1d(expression(req, "expr"), "expr"), L, K, ctx.quad);
  } else {
    double L = 0.0;
    std::int64_t K = 0;
    const FourierCoefficientSet c = series_coefficients(ctx, L, K);
    result = complex_to_real(c, req.real("symmetry-tol", kConjugateSymmetryTolerance));
  }
  return {io::real_coefficient_file(result), io::to_csv(result), {}, {}};
}

// ---------------------------------------------------------------- fourier

ContinuousSpectrum sampled_ft(const SampledFunction& f, const Grid& lambdas) {
  check_anti_aliasing(f.grid(), lambdas);
  std::vector<Complex> values;
  std::vector<Complex> prod(f.size());
  for (double lambda : lambdas.points()) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      prod[i] = f.values()[i] * std::polar(1.0, lambda * f.grid()[i]);
    }
    values.push_back(integrate_samples(f.grid(), prod) / kTwoPi);
  }
  return ContinuousSpectrum(lambdas, std::move(values));
}

Outcome cmd_ft(Context& ctx) {
  Request& req = ctx.req;
  const Source src = source_of(req);
  const Grid lambdas = req.grid("lambda-grid");
  if (src == Source::expression) {
    const double A = req.positive("A");
    const ContinuousSpectrum s = forward_ft(function_1d(expression(req, "expr"), "expr"), lambdas, A, ctx.quad);
    return {io::spectrum_file(s), io::to_csv(s), {}, {}};
  }
  const ContinuousSpectrum s = sampled_ft(input_function(req), lambdas);
  return {io::spectrum_file(s), io::to_csv(s), {}, {}};
}

Outcome cmd_ift(Context& ctx) {
  Request& req = ctx.req;
  const Source src = source_of(req);
  const Grid xs = req.grid("x-grid");
  std::optional<ContinuousSpectrum> spectrum;
  if (src == Source::expression) {
    const Grid lambdas = req.grid("lambda-grid");
    const SampledFunction F = sample(function_1d(expression(req, "expr"), "expr"), lambdas);
    spectrum.emplace(lambdas, std::vector<Complex>(F.values().begin(), F.values().end()));
  } else {
    auto any = io::read_spectrum_file(read_json_file(req.text("input")));
    if (!std::holds_alternative<ContinuousSpectrum>(any)) {
      throw FieldError("input", "ift needs a paper-fourier spectrum file");
    }
    spectrum.emplace(std::get<ContinuousSpectrum>(std::move(any)));
  }
  const SampledFunction f = inverse_ft(*spectrum, xs, ctx.quad);
  return {io::function_file(f), io::to_csv(f), {}, {}};
}

// ---------------------------------------------------------------- laplace

Complex sampled_laplace(const SampledFunction& f, Complex s) {
  if (f.grid().front() < -1e-12) throw FieldError("input", "input grid must start at t >= 0");
  std::vector<Complex> prod(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) prod[i] = f.values()[i] * std::exp(-s * f.grid()[i]);
  return integrate_samples(f.grid(), prod);
}

void note_tail(Outcome& out, Context& ctx, double tail) {
  ctx.diagnostics["max_tail_estimate"] = tail;
  if (tail > 1e-6) {
    out.warnings.push_back("half-line tail estimate " + io::format_real(tail) + " exceeds 1e-6; increase --X");
  }
}

Outcome cmd_lt(Context& ctx) {
  Request& req = ctx.req;
  const Source src = source_of(req);
  std::optional<ComplexFunction> f;
  std::optional<SampledFunction> samples;
  double X = 0.0;
  if (src == Source::expression) {
    f = function_1d(expression(req, "expr"), "expr");
    X = req.positive("X", 60.0);
  } else {
    samples = input_function(req);
  }

  if (req.has("s") == (req.has("sigma") || req.has("tau-grid"))) {
    throw FieldError("s", "lt: give either --s or --sigma with --tau-grid");
  }
  Outcome out;
  if (req.has("s")) {
    const std::vector<Complex> ss = req.complex_list("s");
    Json values = Json::array();
    Json s_json = Json::array();
    std::vector<std::string> rows;
    double tail = 0.0;
    for (const Complex s : ss) {
      Complex v;
      if (f) {
        const HalfLineResult r = forward_laplace(*f, s, X, ctx.quad);
        v = r.value;
        tail = std::max(tail, r.tail_estimate);
      } else {
        check_anti_aliasing(samples->grid(), Grid::uniform(s.imag(), s.imag(), 1));
        v = sampled_laplace(*samples, s);
      }
      s_json.push_back(io::complex_pair(s));
      values.push_back(io::complex_pair(v));
      rows.push_back(io::format_real(s.real()) + "," + io::format_real(s.imag()) + "," +
                     io::format_real(v.real()) + "," + io::format_real(v.imag()) + "\n");
    }
    if (f) note_tail(out, ctx, tail);
    out.doc = Json::object();
    out.doc["kind"] = "laplace-values";
    out.doc["s"] = std::move(s_json);
    out.doc["values"] = std::move(values);
    std::string csv = "s_re,s_im,re,im\n";
    for (const auto& r : rows) csv += r;
    out.csv = std::move(csv);
    return out;
  }

  const double sigma = req.real("sigma");
  const Grid taus = req.grid("tau-grid");
  if (f) {
    const LaplaceLineResult r = laplace_line(*f, sigma, taus, X, ctx.quad);
    note_tail(out, ctx, r.max_tail_estimate);
    out.doc = io::spectrum_file(r.spectrum);
    out.csv = io::to_csv(r.spectrum);
    return out;
  }
  check_anti_aliasing(samples->grid(), taus);
  std::vector<Complex> values;
  for (double tau : taus.points()) values.push_back(sampled_laplace(*samples, {sigma, tau}));
  const LaplaceSpectrum spectrum(sigma, taus, std::move(values));
  out.doc = io::spectrum_file(spectrum);
  out.csv = io::to_csv(spectrum);
  return out;
}

struct SampledInversion {
  SampledFunction f;
  bool truncation_warning = false;
  double max_edge_ratio = 0.0;
  double max_imaginary_residue = 0.0;
};

SampledInversion invert_laplace(const LaplaceSpectrum& spectrum, const Grid& ts, const Context& ctx) {
  std::vector<Complex> values;
  SampledInversion r{SampledFunction(Grid::uniform(0.0, 0.0, 1), {Complex{}})};
  for (double t : ts.points()) {
    const BromwichResult b = bromwich_inverse_sampled(spectrum, t, ctx.quad, ctx.bromwich);
    values.push_back(b.value);
    r.truncation_warning = r.truncation_warning || b.truncation_warning;
    r.max_edge_ratio = std::max(r.max_edge_ratio, b.edge_ratio);
    r.max_imaginary_residue = std::max(r.max_imaginary_residue, b.imaginary_residue);
  }
  r.f = SampledFunction(ts, std::move(values));
  return r;
}

void note_inversion(Outcome& out, Context& ctx, const SampledInversion& inv) {
  ctx.diagnostics["max_edge_ratio"] = inv.max_edge_ratio;
  ctx.diagnostics["max_imaginary_residue"] = inv.max_imaginary_residue;
  ctx.diagnostics["truncation_warning"] = inv.truncation_warning;
  if (inv.truncation_warning) {
    out.warnings.push_back("Bromwich integrand not negligible at the ends of the tau grid (edge ratio " +
                           io::format_real(inv.max_edge_ratio) + ")");
  }
}

Outcome cmd_ilt(Context& ctx) {
  Request& req = ctx.req;
  if (req.has("expr")) throw FieldError("expr", "ilt reads a laplace-line spectrum; use --input");
  auto any = io::read_spectrum_file(read_json_file(req.text("input")));
  if (!std::holds_alternative<LaplaceSpectrum>(any)) {
    throw FieldError("input", "ilt needs a laplace-line spectrum file");
  }
  const Grid ts = req.grid("t-grid");
  const SampledInversion inv = invert_laplace(std::get<LaplaceSpectrum>(any), ts, ctx);
  Outcome out{io::function_file(inv.f), io::to_csv(inv.f), {}, {}};
  note_inversion(out, ctx, inv);
  return out;
}

// ---------------------------------------------------------------- fourier-laplace

FourierLaplaceTruncation fl_truncation(Request& req) {
  FourierLaplaceTruncation tr;
  tr.x_half_width = req.positive("A", tr.x_half_width);
  tr.t_extent = req.positive("X", tr.t_extent);
  return tr;
}

Outcome cmd_flt(Context& ctx) {
  Request& req = ctx.req;
  const bool separable = req.has("expr-x") || req.has("expr-t");
  const int sources = int(req.has("expr")) + int(separable) + int(req.has("input"));
  if (sources != 1) {
    throw FieldError("expr", "flt: give exactly one of --expr, --expr-x with --expr-t, or --input");
  }
  const Grid lambdas = req.grid("lambda-grid");
  const double sigma = req.real("sigma");
  const Grid taus = req.grid("tau-grid");
  Outcome out;
  if (req.has("input")) {
    const SampledFunction2D f = io::read_function2d_file(read_json_file(req.text("input")));
    if (f.t_grid().front() < -1e-12) throw FieldError("input", "input t_grid must start at t >= 0");
    check_anti_aliasing(f.x_grid(), lambdas);
    check_anti_aliasing(f.t_grid(), taus);
    const auto wx = f.x_grid().quadrature_weights();
    const auto wt = f.t_grid().quadrature_weights();
    std::vector<Complex> values;
    for (double lambda : lambdas.points()) {
      for (double tau : taus.points()) {
        const Complex s{sigma, tau};
        Complex sum = 0.0;
        for (std::size_t i = 0; i < f.x_grid().size(); ++i) {
          Complex inner = 0.0;
          for (std::size_t j = 0; j < f.t_grid().size(); ++j) {
            inner += wt[j] * f.value(i, j) * std::exp(-s * f.t_grid()[j]);
          }
          sum += wx[i] * inner * std::polar(1.0, lambda * f.x_grid()[i]);
        }
        values.push_back(sum / kTwoPi);
      }
    }
    const FourierLaplaceSpectrum spectrum(lambdas, sigma, taus, std::move(values));
    out.doc = io::spectrum_file(spectrum);
    out.csv = io::to_csv(spectrum);
    return out;
  }
  const FourierLaplaceTruncation tr = fl_truncation(req);
  ForwardFlResult r = [&]() {
    if (separable) {
      const expr::Expression gx = expression(req, "expr-x");
      const expr::Expression ht = expression(req, "expr-t");
      return forward_fl_separable(function_1d(gx, "expr-x"), function_1d(ht, "expr-t"), lambdas, sigma,
                                  taus, tr, ctx.quad);
    }
    return forward_fl(expr::as_function2d(expression(req, "expr")), lambdas, sigma, taus, tr, ctx.quad);
  }();
  note_tail(out, ctx, r.max_tail_estimate);
  out.doc = io::spectrum_file(r.spectrum);
  out.csv = io::to_csv(r.spectrum);
  return out;
}

Outcome cmd_iflt(Context& ctx) {
  Request& req = ctx.req;
  if (req.has("expr")) throw FieldError("expr", "iflt reads a fourier-laplace spectrum; use --input");
  auto any = io::read_spectrum_file(read_json_file(req.text("input")));
  if (!std::holds_alternative<FourierLaplaceSpectrum>(any)) {
    throw FieldError("input", "iflt needs a fourier-laplace spectrum file");
  }
  const Grid xs = req.grid("x-grid");
  const Grid ts = req.grid("t-grid");
  const InverseFlGridResult r =
      inverse_fl_grid(std::get<FourierLaplaceSpectrum>(any), xs, ts, ctx.quad, ctx.bromwich);
  Outcome out{io::function2d_file(r.samples), io::to_csv(r.samples), {}, {}};
  ctx.diagnostics["truncation_warning"] = r.truncation_warning;
  if (r.truncation_warning) out.warnings.push_back("Bromwich integrand not negligible at the ends of the tau grid");
  return out;
}

// ---------------------------------------------------------------- verification

Outcome cmd_verify_orthogonality(Context& ctx) {
  Request& req = ctx.req;
  const double L = req.positive("L");
  const std::int64_t K = req.integer("K");
  const double threshold = req.positive("threshold", 1e-10);
  const ComplexMatrix gram = gram_matrix(L, K, ctx.quad);
  const GramSummary summary = summarize_gram(gram, L);

  Outcome out;
  out.doc = Json::object();
  out.doc["kind"] = "orthogonality-report";
  out.doc["L"] = L;
  out.doc["K"] = K;
  out.doc["expected_diagonal"] = 2.0 * L;
  out.doc["max_diagonal_deviation"] = summary.max_diagonal_deviation;
  out.doc["max_off_diagonal"] = summary.max_off_diagonal;
  Json rows = Json::array();
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < gram.cols(); ++j) row.push_back(io::complex_pair(gram(i, j)));
    rows.push_back(std::move(row));
  }
  out.doc["gram"] = std::move(rows);
  const bool passed = summary.max_off_diagonal <= threshold && summary.max_diagonal_deviation <= threshold;
  out.doc["passed"] = passed;
  if (!passed) out.failure = "Gram matrix deviates from 2L I by more than " + io::format_real(threshold);
  return out;
}

Outcome cmd_verify_residual(Context& ctx) {
  Request& req = ctx.req;
  const std::string problem_name = req.text("problem", std::string("whole-line"));
  std::optional<EigenProblemSpec> problem;
  if (problem_name == "whole-line") {
    problem = EigenProblemSpec::whole_line();
  } else if (problem_name == "weighted-halfline") {
    problem = EigenProblemSpec::weighted_halfline(req.real("sigma", 1.0));
  } else {
    throw FieldError("problem", "--problem must be whole-line or weighted-halfline");
  }
  const double lambda = req.real("lambda", 0.0);
  std::vector<int> ns;
  const std::string n_text = req.text("n", std::string("4,8,16"));
  for (const auto& part : split(n_text, ',')) {
    const auto v = parse_decimal(trim(part));
    if (!v || *v < 1 || *v != std::floor(*v) || *v > 1e6) {
      throw FieldError("n", "--n must be a comma-separated list of positive integers");
    }
    ns.push_back(static_cast<int>(*v));
  }
  const double tolerance = req.positive("ratio-tol", 0.2);

  Outcome out;
  out.doc = Json::object();
  out.doc["kind"] = "residual-report";
  out.doc["problem"] = problem_name;
  out.doc["lambda"] = lambda;
  Json entries = Json::array();
  std::vector<double> ratios;
  for (int n : ns) {
    const double r = residual_ratio(*problem, lambda, WindowedTestSequence{lambda, n}, ctx.quad);
    ratios.push_back(r);
    Json e = Json::object();
    e["n"] = n;
    e["ratio"] = r;
    entries.push_back(std::move(e));
  }
  out.doc["residuals"] = std::move(entries);
  bool passed = true;
  Json decay = Json::array();
  for (std::size_t i = 1; i < ns.size(); ++i) {
    const double q = ratios[i] / ratios[i - 1];
    decay.push_back(q);
    const double expected = static_cast<double>(ns[i - 1]) / static_cast<double>(ns[i]);
    if (std::abs(q - expected) > tolerance * expected) passed = false;
  }
  out.doc["successive_quotients"] = std::move(decay);
  out.doc["passed"] = passed;
  if (!passed) out.failure = "residual ratio does not decay like 1/n within the tolerance";
  return out;
}

Outcome cmd_verify_sl(Context& ctx) {
  Request& req = ctx.req;
  const double L = req.positive("L");
  const std::int64_t K = req.integer("K");
  const Grid xs = req.grid("x-grid", "-" + io::format_real(L) + ":" + io::format_real(L) + ":101");
  const double threshold = req.positive("threshold", 1e-12);

  Outcome out;
  out.doc = Json::object();
  out.doc["kind"] = "sturm-liouville-report";
  out.doc["L"] = L;
  out.doc["K"] = K;
  Json entries = Json::array();
  bool passed = true;
  double worst = 0.0;
  for (std::int64_t k = -K; k <= K; ++k) {
    const SturmLiouvilleReport r = sl_residual(L, k, xs);
    Json e = Json::object();
    e["k"] = k;
    e["max_residual"] = r.max_residual;
    e["first_order_residual"] = first_order_residual(L, k, xs);
    e["boundary_conditions_hold"] = r.boundary_conditions_hold;
    entries.push_back(std::move(e));
    worst = std::max(worst, r.max_residual);
    passed = passed && r.boundary_conditions_hold && r.max_residual <= threshold;
  }
  out.doc["modes"] = std::move(entries);
  out.doc["max_residual"] = worst;
  out.doc["passed"] = passed;
  if (!passed) out.failure = "Sturm-Liouville residual or boundary conditions failed";
  return out;
}

Outcome cmd_estimate_abscissa(Context& ctx) {
  Request& req = ctx.req;
  const Source src = source_of(req);
  SampledFunction samples = src == Source::expression
                                ? sample(function_1d(expression(req, "expr"), "expr"),
                                         req.grid("x-grid", std::string("0:20:201")))
                                : input_function(req);
  const ExponentialTypeEstimate est = estimate_abscissa(samples);
  Outcome out;
  out.doc = Json::object();
  out.doc["kind"] = "abscissa-estimate";
  out.doc["sigma_hat"] = est.sigma_hat;
  out.doc["M_hat"] = est.M_hat;
  out.doc["fit_residual"] = est.fit_residual;
  out.doc["samples_used"] = est.samples_used;
  out.doc["suggested_sigma"] = default_inversion_sigma(est);
  out.warnings = est.warnings;
  return out;
}

// ---------------------------------------------------------------- roundtrip

Json roundtrip_doc(const std::string& transform, const SampledFunction& original,
                   const SampledFunction& reconstructed, double& max_error) {
  max_error = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    max_error = std::max(max_error, std::abs(original.values()[i] - reconstructed.values()[i]));
  }
  Json doc = Json::object();
  doc["kind"] = "roundtrip";
  doc["transform"] = transform;
  doc["grid"] = io::grid_array(original.grid());
  Json a = Json::array();
  Json b = Json::array();
  for (std::size_t i = 0; i < original.size(); ++i) {
    a.push_back(io::complex_pair(original.values()[i]));
    b.push_back(io::complex_pair(reconstructed.values()[i]));
  }
  doc["original"] = std::move(a);
  doc["reconstructed"] = std::move(b);
  doc["max_error"] = max_error;
  return doc;
}

Outcome cmd_roundtrip(Context& ctx) {
  Request& req = ctx.req;
  const std::string transform = req.text("transform", std::string("ft"));
  const expr::Expression e = expression(req, "expr");
  const ComplexFunction f = function_1d(e, "expr");

  std::optional<SampledFunction> original;
  std::optional<SampledFunction> rebuilt;
  Outcome out;
  if (transform == "ft") {
    const double A = req.positive("A", 12.0);
    const Grid lambdas = req.grid("lambda-grid", std::string("-12:12:481"));
    const Grid xs = req.grid("x-grid", std::string("-3:3:61"));
    const ContinuousSpectrum s = forward_ft(f, lambdas, A, ctx.quad);
    rebuilt = inverse_ft(s, xs, ctx.quad);
    original = sample(f, xs);
  } else if (transform == "series") {
    const double L = req.positive("L", 1.0);
    const std::int64_t K = req.integer("K", 32);
    const Grid xs = req.grid("x-grid", "-" + io::format_real(L) + ":" + io::format_real(L) + ":101");
    const FourierCoefficientSet c = complex_coefficients(f, L, K, ctx.quad);
    std::vector<Complex> values;
    for (double x : xs.points()) values.push_back(synthesize(c, x));
    rebuilt = SampledFunction(xs, std::move(values));
    original = sample(f, xs);
  } else if (transform == "lt") {
    const double sigma = req.real("sigma", 1.0);
    const double X = req.positive("X", 60.0);
    const Grid taus = req.grid("tau-grid", std::string("-100:100:2001"));
    const Grid ts = req.grid("t-grid", std::string("0.5:5:10"));
    const LaplaceLineResult line = laplace_line(f, sigma, taus, X, ctx.quad);
    note_tail(out, ctx, line.max_tail_estimate);
    const SampledInversion inv = invert_laplace(line.spectrum, ts, ctx);
    note_inversion(out, ctx, inv);
    rebuilt = inv.f;
    original = sample(f, ts);
  } else {
    throw FieldError("transform", "--transform must be ft, series or lt");
  }
  double max_error = 0.0;
  out.doc = roundtrip_doc(transform, *original, *rebuilt, max_error);
  std::string csv = "x,original_re,original_im,reconstructed_re,reconstructed_im\n";
  for (std::size_t i = 0; i < original->size(); ++i) {
    const Complex a = original->values()[i];
    const Complex b = rebuilt->values()[i];
    csv += io::format_real(original->grid()[i]) + "," + io::format_real(a.real()) + "," +
           io::format_real(a.imag()) + "," + io::format_real(b.real()) + "," + io::format_real(b.imag()) + "\n";
  }
  out.csv = std::move(csv);
  if (req.has("max-error")) {
    const double limit = req.positive("max-error");
    out.doc["passed"] = max_error <= limit;
    if (max_error > limit) out.failure = "roundtrip error " + io::format_real(max_error) + " exceeds --max-error";
  }
  return out;
}

// ---------------------------------------------------------------- dispatch

struct OptionDef {
  std::string name;
  std::string help;
};

struct CommandDef {
  std::string name;
  std::string help;
  std::vector<OptionDef> options;
  std::function<Outcome(Context&)> handler;
  bool uses_bromwich = false;
};

const OptionDef kExpr{"expr", "analytic expression (see grammar below)"};
const OptionDef kInput{"input", "input JSON file"};

std::vector<CommandDef> commands() {
  return {
      {"series", "complex Fourier coefficients c_{-K..K} on (-L, L)",
       {kExpr, kInput, {"L", "half-length L"}, {"K", "largest |k|"}}, cmd_series},
      {"real-series", "real Fourier coefficients a_0..a_K, b_1..b_K on (-L, L)",
       {kExpr, kInput, {"L", "half-length L"}, {"K", "largest k"},
        {"symmetry-tol", "conjugate-symmetry tolerance for sampled input (default 1e-8)"}},
       cmd_real_series},
      {"ft", "forward Fourier transform F(lambda) = 1/(2pi) int f(x) e^{i lambda x} dx",
       {kExpr, kInput, {"A", "truncation [-A, A] (expression input)"}, {"lambda-grid", "frequency grid"}},
       cmd_ft},
      {"ift", "inverse Fourier transform f(x) = int F(lambda) e^{-i lambda x} dlambda",
       {kExpr, kInput, {"lambda-grid", "frequency grid (expression input)"}, {"x-grid", "output grid"}},
       cmd_ift},
      {"lt", "Laplace transform at points (--s) or along Re s = sigma (--sigma, --tau-grid)",
       {kExpr, kInput, {"X", "truncation [0, X] (default 60)"},
        {"s", "comma-separated complex values, e.g. 2+0i,1-3i"}, {"sigma", "line abscissa"},
        {"tau-grid", "imaginary parts along the line"}},
       cmd_lt},
      {"ilt", "inverse Laplace transform of a laplace-line spectrum by the Bromwich integral",
       {kExpr, kInput, {"t-grid", "output times (t > 0)"}}, cmd_ilt, true},
      {"flt", "Fourier-Laplace transform of f(x, t)",
       {kExpr, kInput, {"expr-x", "x factor of a separable f"}, {"expr-t", "t factor of a separable f"},
        {"A", "x truncation (default 12)"}, {"X", "t truncation (default 40)"},
        {"lambda-grid", "frequency grid"}, {"sigma", "line abscissa"}, {"tau-grid", "imaginary parts"}},
       cmd_flt},
      {"iflt", "inverse Fourier-Laplace transform of a fourier-laplace spectrum",
       {kExpr, kInput, {"x-grid", "output x grid"}, {"t-grid", "output t grid (t > 0)"}}, cmd_iflt, true},
      {"verify-orthogonality", "Gram matrix of the periodic eigenfunctions",
       {{"L", "half-length L"}, {"K", "largest |k|"}, {"threshold", "pass threshold (default 1e-10)"}},
       cmd_verify_orthogonality},
      {"verify-residual", "residual-ratio decay for a continuum eigenvalue",
       {{"problem", "whole-line (default) or weighted-halfline"}, {"sigma", "weight (default 1)"},
        {"lambda", "eigenvalue (default 0)"}, {"n", "window widths (default 4,8,16)"},
        {"ratio-tol", "relative tolerance on each quotient (default 0.2)"}},
       cmd_verify_residual},
      {"verify-sl", "second-order consistency of the periodic eigenfunctions",
       {{"L", "half-length L"}, {"K", "largest |k|"}, {"x-grid", "check points (default 101 on [-L, L])"},
        {"threshold", "pass threshold (default 1e-12)"}},
       cmd_verify_sl},
      {"estimate-abscissa", "growth rate sigma with |f(x)| ~ M e^{sigma x}",
       {kExpr, kInput, {"x-grid", "sample grid for --expr (default 0:20:201)"}}, cmd_estimate_abscissa},
      {"roundtrip", "forward then inverse transform of --expr, with the sup error",
       {kExpr, {"transform", "ft (default), series or lt"}, {"A", "ft truncation (default 12)"},
        {"lambda-grid", "ft grid (default -12:12:481)"}, {"x-grid", "evaluation grid"},
        {"L", "series half-length (default 1)"}, {"K", "series order (default 32)"},
        {"sigma", "lt abscissa (default 1)"}, {"X", "lt truncation (default 60)"},
        {"tau-grid", "lt line grid (default -100:100:2001)"}, {"t-grid", "lt times (default 0.5:5:10)"},
        {"max-error", "fail with status 2 above this error"}},
       cmd_roundtrip, true},
  };
}

const char* kFooter = R"(Numbers accept decimals and pi multiples: 2, -0.5, pi, 0.5pi, 2*pi, -pi/2.
Grids: a:b:n (n uniform points), gauss:a:b:n (Gauss-Legendre nodes), or a list 0.1,0.5,1.
Complex values: 2, 2+0i, 1-3i, 0.5i.

Expressions in x (and t where a function of two variables is expected):
  numbers, x, t, pi, e, + - * / ^, parentheses, exp sin cos sqrt abs log.
  ^ binds tighter than unary minus and is right associative; its exponent
  must be a constant. One-variable commands also accept an expression in t.

CSV columns (--format csv):
  function x,re,im    function2d x,t,re,im    coefficients k,re,im
  real coefficients k,a,b    spectrum lambda,sigma,tau,re,im
  laplace values s_re,s_im,re,im    roundtrip x,original_re,original_im,reconstructed_re,reconstructed_im

Environment: UNITRANSFORM_QUAD_TOL sets the default quadrature tolerance.
Exit status: 0 ok, 1 invalid request, 2 numerical failure or failed verification.)";

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const expr::ParseError*>(&e)) return "parse-error";
  if (dynamic_cast<const IoError*>(&e)) return "io-error";
  if (dynamic_cast<const io::FormatError*>(&e)) return "format-error";
  if (dynamic_cast<const ContractViolation*>(&e)) return "invalid-request";
  if (dynamic_cast<const VerificationFailed*>(&e)) return "verification-failed";
  if (dynamic_cast<const StrictWarning*>(&e)) return "strict-warning";
  if (dynamic_cast<const DivergenceError*>(&e)) return "divergence";
  if (dynamic_cast<const AliasingError*>(&e)) return "aliasing";
  if (dynamic_cast<const TruncationError*>(&e)) return "truncation";
  if (dynamic_cast<const QuadratureError*>(&e)) return "quadrature";
  if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient-data";
  if (dynamic_cast<const unitransform::EvaluationError*>(&e) ||
      dynamic_cast<const expr::EvaluationError*>(&e)) {
    return "evaluation";
  }
  return "numerical";
}

int report_error(std::ostream& err, int code, const std::string& kind, const std::string& field,
                 const std::string& message, std::optional<std::size_t> offset = std::nullopt) {
  Json j = Json::object();
  j["status"] = "error";
  j["code"] = code;
  j["kind"] = kind;
  j["field"] = field.empty() ? Json(nullptr) : Json(field);
  if (offset) j["offset"] = *offset;
  j["message"] = message;
  err << io::dump(j) << '\n';
  return code;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("out", "cannot open output file '" + path + "'");
  file << text;
  if (!file) throw IoError("out", "failed writing output file '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unitransform: Fourier series, Fourier, Laplace and Fourier-Laplace transforms"};
  app.name("unitransform");
  app.footer(kFooter);
  app.require_subcommand(1);

  const std::vector<CommandDef> defs = commands();
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, std::string> out_path;
  std::map<std::string, std::string> format;
  std::map<std::string, std::string> quad_tol;
  std::map<std::string, std::string> quad_method;
  std::map<std::string, std::string> quad_order;
  std::map<std::string, CLI::App*> subs;

  for (const auto& def : defs) {
    CLI::App* sub = app.add_subcommand(def.name, def.help);
    subs[def.name] = sub;
    auto& vals = values[def.name];
    for (const auto& opt : def.options) {
      sub->add_option_function<std::string>(
          "--" + opt.name, [&vals, name = opt.name](const std::string& v) { vals[name] = v; }, opt.help);
    }
    sub->add_option("--out", out_path[def.name], "write the result here instead of stdout");
    sub->add_option("--format", format[def.name], "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--quad-tol", quad_tol[def.name], "quadrature tolerance (default 1e-10)");
    sub->add_option("--quad-method", quad_method[def.name], "adaptive (default), gauss-legendre or trapezoid");
    sub->add_option("--quad-order", quad_order[def.name], "rule order or panel count for fixed rules");
    sub->add_flag("--strict", flags[def.name]["strict"], "treat warnings as failures (exit 2)");
    if (def.uses_bromwich) {
      sub->add_flag("--no-tail-correction", flags[def.name]["no-tail-correction"],
                    "plain truncated Bromwich segment without the leading-order tail term");
    }
  }

  if (!args.empty() && !args.front().empty() && args.front().front() != '-' && !subs.count(args.front())) {
    return report_error(err, kExitInvalid, "usage-error", "command", "unknown command '" + args.front() + "'");
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, kExitInvalid, "usage-error", "", e.what());
  }

  const CommandDef* def = nullptr;
  for (const auto& d : defs) {
    if (subs[d.name]->parsed()) def = &d;
  }
  if (!def) return report_error(err, kExitInvalid, "usage-error", "", "no command given");

  Request req(def->name, values[def->name]);
  const std::string& name = def->name;
  try {
    QuadratureSpec quad;
    std::string tol_text = quad_tol[name];
    std::string tol_source = "option";
    if (tol_text.empty()) {
      const char* env = std::getenv("UNITRANSFORM_QUAD_TOL");
      if (env && *env) {
        tol_text = env;
        tol_source = "environment";
      } else {
        tol_source = "default";
      }
    }
    if (!tol_text.empty()) {
      const auto tol = parse_number(tol_text);
      if (!tol || !(*tol > 0.0)) throw FieldError("quad-tol", "quadrature tolerance must be a positive number");
      quad.tolerance = *tol;
    }
    if (!quad_method[name].empty()) {
      try {
        quad.method = parse_quadrature_method(quad_method[name]);
      } catch (const ContractViolation& e) {
        throw FieldError("quad-method", e.what());
      }
    }
    if (!quad_order[name].empty()) {
      const auto order = parse_decimal(trim(quad_order[name]));
      if (!order || *order < 2 || *order > 1e6 || *order != std::floor(*order)) {
        throw FieldError("quad-order", "--quad-order must be an integer >= 2");
      }
      quad.order = static_cast<int>(*order);
    }
    try {
      quad.validate();
    } catch (const ContractViolation& e) {
      throw FieldError("quad-tol", e.what());
    }

    Context ctx{req, quad, false, BromwichOptions{}, Json::object()};
    ctx.strict = flags[name]["strict"];
    if (flags[name]["no-tail-correction"]) ctx.bromwich.tail = TailCorrection::none;

    Outcome outcome = def->handler(ctx);

    Json meta = Json::object();
    meta["command"] = name;
    Json request = req.echo();
    if (def->uses_bromwich) {
      request["tail_correction"] = ctx.bromwich.tail == TailCorrection::leading_order ? "leading-order" : "none";
    }
    request["strict"] = ctx.strict;
    meta["request"] = std::move(request);
    Json q = quadrature_json(quad);
    q["tolerance_source"] = tol_source;
    meta["quadrature"] = std::move(q);
    meta["diagnostics"] = ctx.diagnostics;
    Json warnings = Json::array();
    for (const auto& w : outcome.warnings) warnings.push_back(w);
    meta["warnings"] = std::move(warnings);

    if (ctx.strict && !outcome.warnings.empty()) {
      throw StrictWarning(outcome.warnings.front());
    }
    outcome.doc["meta"] = std::move(meta);

    const bool csv = format[name] == "csv";
    if (csv && !outcome.csv) throw FieldError("format", name + " has no CSV form");
    write_output(csv ? *outcome.csv : io::dump(outcome.doc) + "\n", out_path[name], out);
    if (outcome.failure) throw VerificationFailed(*outcome.failure);
    return kExitOk;
  } catch (const expr::ParseError& e) {
    return report_error(err, kExitInvalid, "parse-error", req.parsing, e.what(), e.offset());
  } catch (const FieldError& e) {
    return report_error(err, kExitInvalid, error_kind(e), e.field(), e.what());
  } catch (const ContractViolation& e) {
    return report_error(err, kExitInvalid, error_kind(e), "", e.what());
  } catch (const NumericalError& e) {
    return report_error(err, kExitNumerical, error_kind(e), "", e.what());
  } catch (const std::exception& e) {
    return report_error(err, kExitNumerical, "internal", "", e.what());
  }
}

}  // namespace unitransform::cli
