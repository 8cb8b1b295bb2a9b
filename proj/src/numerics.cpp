#include "unitransform/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "unitransform/errors.hpp"

namespace unitransform {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Complex checked_eval(const ComplexFunction& f, double x) {
  const Complex v = f(x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw EvaluationError("non-finite integrand value at x = " + format_double(x), x);
  }
  return v;
}

// Kronrod 15-point abscissae/weights and the embedded 7-point Gauss weights
// (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  Complex value;
  double error;
  double resabs;
};

struct ByError {
  bool operator()(const Segment& lhs, const Segment& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;
  }
};

// QUADPACK error heuristic applied to one real component.
double qk_error(double resk, double resg, double resabs, double resasc, double half_length) {
  double err = std::abs((resk - resg) * half_length);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return err;
}

Segment gauss_kronrod15(const ComplexFunction& f, double a, double b, std::size_t& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<Complex, 15> fv{};
  fv[7] = checked_eval(f, center);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = checked_eval(f, center - dx);
    fv[14 - j] = checked_eval(f, center + dx);
  }
  evals += 15;

  Complex resk = fv[7] * kWgk[7];
  Complex resg = fv[7] * kWg[3];
  double abs_re = std::abs(fv[7].real()) * kWgk[7];
  double abs_im = std::abs(fv[7].imag()) * kWgk[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const Complex pair = fv[j] + fv[14 - j];
    resk += pair * kWgk[j];
    abs_re += kWgk[j] * (std::abs(fv[j].real()) + std::abs(fv[14 - j].real()));
    abs_im += kWgk[j] * (std::abs(fv[j].imag()) + std::abs(fv[14 - j].imag()));
    if (j % 2 == 1) resg += pair * kWg[j / 2];
  }
  const Complex mean = resk * 0.5;
  double asc_re = kWgk[7] * std::abs(fv[7].real() - mean.real());
  double asc_im = kWgk[7] * std::abs(fv[7].imag() - mean.imag());
  for (std::size_t j = 0; j < 7; ++j) {
    asc_re += kWgk[j] * (std::abs(fv[j].real() - mean.real()) +
                         std::abs(fv[14 - j].real() - mean.real()));
    asc_im += kWgk[j] * (std::abs(fv[j].imag() - mean.imag()) +
                         std::abs(fv[14 - j].imag() - mean.imag()));
  }
  const double err_re = qk_error(resk.real(), resg.real(), abs_re * abs_half,
                                 asc_re * abs_half, half);
  const double err_im = qk_error(resk.imag(), resg.imag(), abs_im * abs_half,
                                 asc_im * abs_half, half);
  return Segment{a, b, resk * half, std::hypot(err_re, err_im), (abs_re + abs_im) * abs_half};
}

int oscillation_panels(double a, double b, double frequency) {
  if (!(frequency > 0.0)) return 1;
  const double count = std::ceil(frequency * (b - a) / (2.0 * std::numbers::pi));
  return static_cast<int>(std::clamp(count, 1.0, 1e7));
}

Complex trapezoid_sum(std::span<const Complex> fv, double h) {
  Complex sum = 0.5 * (fv.front() + fv.back());
  for (std::size_t i = 1; i + 1 < fv.size(); ++i) sum += fv[i];
  return sum * h;
}

QuadratureResult integrate_trapezoid(const ComplexFunction& f, double a, double b, int panels) {
  const auto n = static_cast<std::size_t>(panels);
  const Grid grid = Grid::uniform(a, b, n + 1);
  std::vector<Complex> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = checked_eval(f, grid[i]);
  const double h = (b - a) / static_cast<double>(n);
  const Complex fine = trapezoid_sum(fv, h);

  QuadratureResult out{fine, 0.0, n + 1};
  if (n % 2 == 0) {
    std::vector<Complex> coarse;
    coarse.reserve(n / 2 + 1);
    for (std::size_t i = 0; i <= n; i += 2) coarse.push_back(fv[i]);
    out.error_estimate = std::abs(fine - trapezoid_sum(coarse, 2.0 * h)) / 3.0;
  } else if (n > 1) {
    const auto m = (n + 1) / 2;
    const Grid coarse_grid = Grid::uniform(a, b, m + 1);
    std::vector<Complex> coarse(m + 1);
    for (std::size_t i = 0; i <= m; ++i) coarse[i] = checked_eval(f, coarse_grid[i]);
    out.evaluations += m + 1;
    out.error_estimate = std::abs(fine - trapezoid_sum(coarse, (b - a) / static_cast<double>(m)));
  }
  return out;
}

Complex composite_gauss(const ComplexFunction& f, double a, double b, int panels,
                        const GaussRule& rule, std::size_t& evals) {
  const double width = (b - a) / panels;
  Complex total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double hi = (p + 1 == panels) ? b : lo + width;
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    Complex panel = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      panel += rule.weights[j] * checked_eval(f, center + half * rule.nodes[j]);
    }
    total += panel * half;
  }
  evals += static_cast<std::size_t>(panels) * rule.nodes.size();
  return total;
}

QuadratureResult integrate_gauss(const ComplexFunction& f, double a, double b, int order,
                                 int panels) {
  const GaussRule rule = gauss_legendre_rule(static_cast<std::size_t>(order));
  QuadratureResult out;
  out.value = composite_gauss(f, a, b, panels, rule, out.evaluations);
  const int coarse_panels = std::max(1, (panels + 1) / 2);
  if (coarse_panels != panels) {
    out.error_estimate =
        std::abs(out.value - composite_gauss(f, a, b, coarse_panels, rule, out.evaluations));
  } else {
    const GaussRule lower = gauss_legendre_rule(static_cast<std::size_t>(order - 1));
    out.error_estimate =
        std::abs(out.value - composite_gauss(f, a, b, panels, lower, out.evaluations));
  }
  return out;
}

QuadratureResult integrate_adaptive(const ComplexFunction& f, double a, double b,
                                    const QuadratureSpec& spec, int panels) {
  std::priority_queue<Segment, std::vector<Segment>, ByError> active;
  std::vector<Segment> settled;
  std::size_t evals = 0;
  double total_error = 0.0;
  double total_resabs = 0.0;

  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double hi = (p + 1 == panels) ? b : lo + width;
    Segment s = gauss_kronrod15(f, lo, hi, evals);
    total_error += s.error;
    total_resabs += s.resabs;
    active.push(s);
  }

  // Twice the per-segment roundoff floor, so a result limited only by roundoff
  // is accepted instead of being bisected until the subdivision cap.
  auto target = [&] { return std::max(spec.tolerance, 100.0 * kEps * total_resabs); };
  auto recount = [&] {
    total_error = 0.0;
    total_resabs = 0.0;
    auto copy = active;
    while (!copy.empty()) {
      total_error += copy.top().error;
      total_resabs += copy.top().resabs;
      copy.pop();
    }
    for (const auto& s : settled) {
      total_error += s.error;
      total_resabs += s.resabs;
    }
  };

  int subdivisions = 0;
  while (!active.empty()) {
    if (total_error <= target()) {
      recount();
      if (total_error <= target()) break;
    }
    if (subdivisions >= spec.max_subdivisions) {
      throw QuadratureError("adaptive quadrature on [" + format_double(a) + ", " +
                            format_double(b) + "] reached " +
                            std::to_string(spec.max_subdivisions) +
                            " subdivisions with error estimate " + format_double(total_error));
    }
    Segment worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 8.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      settled.push_back(worst);
      continue;
    }
    Segment left = gauss_kronrod15(f, worst.a, mid, evals);
    Segment right = gauss_kronrod15(f, mid, worst.b, evals);
    total_error += left.error + right.error - worst.error;
    total_resabs += left.resabs + right.resabs - worst.resabs;
    active.push(left);
    active.push(right);
    ++subdivisions;
  }
  recount();

  while (!active.empty()) {
    settled.push_back(active.top());
    active.pop();
  }
  std::sort(settled.begin(), settled.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  Complex value = 0.0;
  for (const auto& s : settled) value += s.value;

  if (total_error > target()) {
    throw QuadratureError("adaptive quadrature on [" + format_double(a) + ", " +
                          format_double(b) + "] cannot resolve below error estimate " +
                          format_double(total_error));
  }
  return QuadratureResult{value, total_error, evals};
}

}  // namespace

Complex unit_phase_pi(double v) {
  double r = std::fmod(v, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r == 0.0) return {1.0, 0.0};
  if (r == 1.0 || r == -1.0) return {-1.0, 0.0};
  if (r == 0.5) return {0.0, 1.0};
  if (r == -0.5) return {0.0, -1.0};
  const double angle = std::numbers::pi * r;
  return {std::cos(angle), std::sin(angle)};
}

std::string to_string(GridKind kind) {
  switch (kind) {
    case GridKind::uniform: return "uniform";
    case GridKind::gauss_nodes: return "gauss-nodes";
    case GridKind::irregular: return "irregular";
  }
  return "irregular";
}

Grid::Grid(std::vector<double> points, GridKind kind, std::vector<double> weights)
    : points_(std::move(points)), kind_(kind), gauss_weights_(std::move(weights)) {}

Grid Grid::uniform(double a, double b, std::size_t n) {
  if (n == 0) throw ContractViolation("grid needs at least one point");
  if (!std::isfinite(a) || !std::isfinite(b)) throw ContractViolation("grid bounds must be finite");
  if (n == 1) {
    if (a != b) throw ContractViolation("a one-point grid needs equal bounds");
    return Grid({a}, GridKind::uniform);
  }
  if (!(a < b)) throw ContractViolation("grid bounds must satisfy a < b");
  std::vector<double> pts(n);
  const auto last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<double>(i);
    pts[i] = (a * (last - k) + b * k) / last;
  }
  pts.front() = a;
  pts.back() = b;
  return Grid(std::move(pts), GridKind::uniform);
}

Grid Grid::gauss_legendre(double a, double b, std::size_t n) {
  if (n == 0) throw ContractViolation("grid needs at least one point");
  if (!(a < b)) throw ContractViolation("grid bounds must satisfy a < b");
  const GaussRule rule = gauss_legendre_rule(n);
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<double> pts(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = center + half * rule.nodes[i];
    w[i] = half * rule.weights[i];
  }
  return Grid(std::move(pts), GridKind::gauss_nodes, std::move(w));
}

Grid Grid::from_points(std::vector<double> points) {
  if (points.empty()) throw ContractViolation("grid needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw ContractViolation("grid points must be finite");
    if (i > 0 && !(points[i] > points[i - 1])) {
      throw ContractViolation("grid points must be strictly increasing (index " +
                              std::to_string(i) + ")");
    }
  }
  GridKind kind = GridKind::uniform;
  if (points.size() > 2) {
    const double mean = (points.back() - points.front()) / static_cast<double>(points.size() - 1);
    const double scale =
        std::max({mean, std::abs(points.front()), std::abs(points.back())});
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (std::abs((points[i] - points[i - 1]) - mean) > 1e-12 * scale) {
        kind = GridKind::irregular;
        break;
      }
    }
  }
  return Grid(std::move(points), kind);
}

double Grid::max_spacing() const noexcept {
  double gap = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) gap = std::max(gap, points_[i] - points_[i - 1]);
  return gap;
}

std::vector<double> Grid::quadrature_weights() const {
  if (kind_ == GridKind::gauss_nodes) return gauss_weights_;
  const std::size_t n = points_.size();
  std::vector<double> w(n, 0.0);
  if (n < 2) return w;
  w.front() = 0.5 * (points_[1] - points_[0]);
  w.back() = 0.5 * (points_[n - 1] - points_[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (points_[i + 1] - points_[i - 1]);
  return w;
}

SampledFunction::SampledFunction(Grid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ContractViolation("sample count " + std::to_string(values_.size()) +
                            " does not match grid size " + std::to_string(grid_.size()));
  }
}

SampledFunction2D::SampledFunction2D(Grid x_grid, Grid t_grid, std::vector<Complex> values)
    : x_grid_(std::move(x_grid)), t_grid_(std::move(t_grid)), values_(std::move(values)) {
  if (values_.size() != x_grid_.size() * t_grid_.size()) {
    throw ContractViolation("sample count " + std::to_string(values_.size()) +
                            " does not match grid product " +
                            std::to_string(x_grid_.size() * t_grid_.size()));
  }
}

std::string to_string(QuadratureMethod method) {
  switch (method) {
    case QuadratureMethod::trapezoid: return "trapezoid";
    case QuadratureMethod::gauss_legendre: return "gauss-legendre";
    case QuadratureMethod::adaptive: return "adaptive";
  }
  return "adaptive";
}

QuadratureMethod parse_quadrature_method(const std::string& name) {
  if (name == "trapezoid") return QuadratureMethod::trapezoid;
  if (name == "gauss-legendre") return QuadratureMethod::gauss_legendre;
  if (name == "adaptive") return QuadratureMethod::adaptive;
  throw ContractViolation("unknown quadrature method '" + name + "'");
}

void QuadratureSpec::validate() const {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw ContractViolation("quadrature tolerance must be positive");
  }
  if (order < 2) throw ContractViolation("quadrature order must be at least 2");
  if (panels < 1) throw ContractViolation("quadrature panel count must be positive");
  if (max_subdivisions < 1) throw ContractViolation("max_subdivisions must be positive");
}

QuadratureResult integrate_with_error(const ComplexFunction& f, double a, double b,
                                      const QuadratureSpec& spec, double frequency) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ContractViolation("integration bounds must be finite with a < b, got [" +
                            format_double(a) + ", " + format_double(b) + "]");
  }
  const int osc = oscillation_panels(a, b, std::abs(frequency));
  switch (spec.method) {
    case QuadratureMethod::trapezoid:
      return integrate_trapezoid(f, a, b, std::max(spec.order, 2 * osc));
    case QuadratureMethod::gauss_legendre:
      return integrate_gauss(f, a, b, spec.order, std::max(spec.panels, osc));
    case QuadratureMethod::adaptive:
      return integrate_adaptive(f, a, b, spec, std::max(spec.panels, osc));
  }
  throw ContractViolation("unknown quadrature method");
}

HalfLineResult integrate_halfline(const ComplexFunction& f, double truncation,
                                  const QuadratureSpec& spec, double frequency) {
  if (!(truncation > 0.0) || !std::isfinite(truncation)) {
    throw ContractViolation("half-line truncation X must be positive");
  }
  const double at_end = std::abs(checked_eval(f, truncation));
  const double at_half = std::abs(checked_eval(f, 0.5 * truncation));
  if (at_end > 0.0 && at_end >= at_half) {
    throw DivergenceError("integrand not decaying at truncation X = " + format_double(truncation) +
                          ": |f(X)| = " + format_double(at_end) +
                          " >= |f(X/2)| = " + format_double(at_half));
  }
  const QuadratureResult body = integrate_with_error(f, 0.0, truncation, spec, frequency);
  double tail = 0.0;
  if (at_end > 0.0) {
    const double decay = std::log(at_half / at_end) / (0.5 * truncation);
    tail = at_end / decay;
  }
  return HalfLineResult{body.value, body.error_estimate, tail};
}

Complex integrate_samples(const Grid& grid, std::span<const Complex> values) {
  if (values.size() != grid.size()) {
    throw ContractViolation("sample count does not match grid size");
  }
  const std::vector<double> w = grid.quadrature_weights();
  Complex sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += w[i] * values[i];
  return sum;
}

GaussRule gauss_legendre_rule(std::size_t n) {
  if (n == 0) throw ContractViolation("Gauss-Legendre rule needs at least one node");
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const auto jd = static_cast<double>(j);
        p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
      }
      dp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    if (n % 2 == 1 && i == m - 1) z = 0.0;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace unitransform
