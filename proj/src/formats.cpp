#include "unitransform/formats.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace unitransform::io {

namespace {

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::null: out += "null"; return;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_real(v) : "null";
      return;
    }
    case Json::value_t::string: out += j.dump(); return;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      return;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(value, out);
      }
      out += '}';
      return;
    }
    default: out += "null"; return;
  }
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw FormatError(std::string("missing field \"") + name + "\"");
  }
  return doc.at(name);
}

void expect_kind(const Json& doc, const std::string& kind) {
  const Json& k = field(doc, "kind");
  if (!k.is_string() || k.get<std::string>() != kind) {
    throw FormatError("expected \"kind\":\"" + kind + "\"");
  }
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string("expected a number in \"") + what + "\"");
  return j.get<double>();
}

Grid read_grid(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string("\"") + what + "\" must be an array");
  std::vector<double> pts;
  pts.reserve(j.size());
  for (const auto& v : j) pts.push_back(number(v, what));
  try {
    return Grid::from_points(std::move(pts));
  } catch (const ContractViolation& e) {
    throw FormatError(std::string("\"") + what + "\": " + e.what());
  }
}

Complex read_pair(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw FormatError(std::string("\"") + what + "\" entries must be [re, im] pairs");
  }
  return {number(j[0], what), number(j[1], what)};
}

std::vector<Complex> read_pairs(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string("\"") + what + "\" must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(read_pair(v, what));
  return out;
}

Json pairs(std::span<const Complex> values) {
  Json arr = Json::array();
  for (const Complex& v : values) arr.push_back(complex_pair(v));
  return arr;
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string line;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) line += ',';
    first = false;
    line += c;
  }
  line += '\n';
  return line;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& doc) {
  std::string out;
  dump_into(doc, out);
  return out;
}

Json complex_pair(Complex v) { return Json::array({v.real(), v.imag()}); }

Json grid_array(const Grid& grid) {
  Json arr = Json::array();
  for (double x : grid.points()) arr.push_back(x);
  return arr;
}

Json function_file(const SampledFunction& f, Json meta) {
  Json doc = Json::object();
  doc["kind"] = "function";
  doc["grid"] = grid_array(f.grid());
  doc["values"] = pairs(f.values());
  doc["meta"] = std::move(meta);
  return doc;
}

Json function2d_file(const SampledFunction2D& f, Json meta) {
  Json doc = Json::object();
  doc["kind"] = "function2d";
  doc["x_grid"] = grid_array(f.x_grid());
  doc["t_grid"] = grid_array(f.t_grid());
  Json rows = Json::array();
  for (std::size_t i = 0; i < f.x_grid().size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < f.t_grid().size(); ++j) row.push_back(complex_pair(f.value(i, j)));
    rows.push_back(std::move(row));
  }
  doc["values"] = std::move(rows);
  doc["meta"] = std::move(meta);
  return doc;
}

Json coefficient_file(const FourierCoefficientSet& c, Json meta) {
  Json doc = Json::object();
  doc["kind"] = "fourier-coefficients";
  doc["L"] = c.half_length();
  doc["K"] = c.max_index();
  Json arr = Json::array();
  for (std::int64_t k = -c.max_index(); k <= c.max_index(); ++k) {
    arr.push_back(Json::array({k, c[k].real(), c[k].imag()}));
  }
  doc["c"] = std::move(arr);
  doc["meta"] = std::move(meta);
  return doc;
}

Json real_coefficient_file(const RealFourierCoefficientSet& c, Json meta) {
  Json doc = Json::object();
  doc["kind"] = "real-fourier-coefficients";
  doc["L"] = c.half_length();
  doc["K"] = c.max_index();
  Json a = Json::array();
  Json b = Json::array();
  for (std::int64_t k = 0; k <= c.max_index(); ++k) a.push_back(Json::array({k, c.a(k)}));
  for (std::int64_t k = 1; k <= c.max_index(); ++k) b.push_back(Json::array({k, c.b(k)}));
  doc["a"] = std::move(a);
  doc["b"] = std::move(b);
  doc["meta"] = std::move(meta);
  return doc;
}

Json spectrum_file(const ContinuousSpectrum& s, Json meta) {
  Json doc = Json::object();
  doc["kind"] = "spectrum";
  doc["convention"] = "paper-fourier";
  doc["lambda_grid"] = grid_array(s.lambda_grid());
  doc["sigma"] = nullptr;
  doc["tau_grid"] = Json::array();
  doc["values"] = pairs(s.values());
  doc["meta"] = std::move(meta);
  return doc;
}

Json spectrum_file(const LaplaceSpectrum& s, Json meta) {
  Json doc = Json::object();
  doc["kind"] = "spectrum";
  doc["convention"] = "laplace-line";
  doc["lambda_grid"] = Json::array();
  doc["sigma"] = s.sigma();
  doc["tau_grid"] = grid_array(s.tau_grid());
  doc["values"] = pairs(s.values());
  doc["meta"] = std::move(meta);
  return doc;
}

Json spectrum_file(const FourierLaplaceSpectrum& s, Json meta) {
  Json doc = Json::object();
  doc["kind"] = "spectrum";
  doc["convention"] = "fourier-laplace";
  doc["lambda_grid"] = grid_array(s.lambda_grid());
  doc["sigma"] = s.sigma();
  doc["tau_grid"] = grid_array(s.tau_grid());
  doc["values"] = pairs(s.values());
  doc["meta"] = std::move(meta);
  return doc;
}

SampledFunction read_function_file(const Json& doc) {
  expect_kind(doc, "function");
  Grid grid = read_grid(field(doc, "grid"), "grid");
  std::vector<Complex> values = read_pairs(field(doc, "values"), "values");
  if (values.size() != grid.size()) throw FormatError("\"values\" length does not match \"grid\"");
  return SampledFunction(std::move(grid), std::move(values));
}

SampledFunction2D read_function2d_file(const Json& doc) {
  expect_kind(doc, "function2d");
  Grid xs = read_grid(field(doc, "x_grid"), "x_grid");
  Grid ts = read_grid(field(doc, "t_grid"), "t_grid");
  const Json& rows = field(doc, "values");
  if (!rows.is_array() || rows.size() != xs.size()) {
    throw FormatError("\"values\" must have one row per x_grid point");
  }
  std::vector<Complex> values;
  for (const auto& row : rows) {
    std::vector<Complex> r = read_pairs(row, "values");
    if (r.size() != ts.size()) throw FormatError("\"values\" rows must match t_grid length");
    values.insert(values.end(), r.begin(), r.end());
  }
  return SampledFunction2D(std::move(xs), std::move(ts), std::move(values));
}

FourierCoefficientSet read_coefficient_file(const Json& doc) {
  expect_kind(doc, "fourier-coefficients");
  const double L = number(field(doc, "L"), "L");
  const Json& kj = field(doc, "K");
  if (!kj.is_number_integer() || kj.get<std::int64_t>() < 0) {
    throw FormatError("\"K\" must be a nonnegative integer");
  }
  const auto K = kj.get<std::int64_t>();
  const Json& c = field(doc, "c");
  if (!c.is_array() || c.size() != static_cast<std::size_t>(2 * K + 1)) {
    throw FormatError("\"c\" must hold 2K+1 entries");
  }
  std::vector<Complex> values(c.size());
  for (const auto& entry : c) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer()) {
      throw FormatError("\"c\" entries must be [k, re, im]");
    }
    const auto k = entry[0].get<std::int64_t>();
    if (k < -K || k > K) throw FormatError("\"c\" index out of range");
    values[static_cast<std::size_t>(k + K)] = {number(entry[1], "c"), number(entry[2], "c")};
  }
  try {
    return FourierCoefficientSet(L, std::move(values));
  } catch (const ContractViolation& e) {
    throw FormatError(e.what());
  }
}

RealFourierCoefficientSet read_real_coefficient_file(const Json& doc) {
  expect_kind(doc, "real-fourier-coefficients");
  const double L = number(field(doc, "L"), "L");
  auto read_indexed = [](const Json& arr, const char* what, std::int64_t first) {
    if (!arr.is_array()) throw FormatError(std::string("\"") + what + "\" must be an array");
    std::vector<double> out;
    for (const auto& entry : arr) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
          entry[0].get<std::int64_t>() != first + static_cast<std::int64_t>(out.size())) {
        throw FormatError(std::string("\"") + what + "\" entries must be consecutive [k, value]");
      }
      out.push_back(number(entry[1], what));
    }
    return out;
  };
  try {
    return RealFourierCoefficientSet(L, read_indexed(field(doc, "a"), "a", 0),
                                     read_indexed(field(doc, "b"), "b", 1));
  } catch (const FormatError&) {
    throw;
  } catch (const ContractViolation& e) {
    throw FormatError(e.what());
  }
}

AnySpectrum read_spectrum_file(const Json& doc) {
  expect_kind(doc, "spectrum");
  const Json& conv = field(doc, "convention");
  if (!conv.is_string()) throw FormatError("\"convention\" must be a string");
  const std::string convention = conv.get<std::string>();
  std::vector<Complex> values = read_pairs(field(doc, "values"), "values");
  try {
    if (convention == "paper-fourier") {
      return ContinuousSpectrum(read_grid(field(doc, "lambda_grid"), "lambda_grid"), std::move(values));
    }
    if (convention == "laplace-line") {
      return LaplaceSpectrum(number(field(doc, "sigma"), "sigma"),
                             read_grid(field(doc, "tau_grid"), "tau_grid"), std::move(values));
    }
    if (convention == "fourier-laplace") {
      return FourierLaplaceSpectrum(read_grid(field(doc, "lambda_grid"), "lambda_grid"),
                                    number(field(doc, "sigma"), "sigma"),
                                    read_grid(field(doc, "tau_grid"), "tau_grid"), std::move(values));
    }
  } catch (const FormatError&) {
    throw;
  } catch (const ContractViolation& e) {
    throw FormatError(e.what());
  }
  throw FormatError("unknown spectrum convention \"" + convention + "\"");
}

std::string to_csv(const SampledFunction& f) {
  std::string out = "x,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += csv_line({format_real(f.grid()[i]), format_real(f.values()[i].real()),
                     format_real(f.values()[i].imag())});
  }
  return out;
}

std::string to_csv(const SampledFunction2D& f) {
  std::string out = "x,t,re,im\n";
  for (std::size_t i = 0; i < f.x_grid().size(); ++i) {
    for (std::size_t j = 0; j < f.t_grid().size(); ++j) {
      out += csv_line({format_real(f.x_grid()[i]), format_real(f.t_grid()[j]),
                       format_real(f.value(i, j).real()), format_real(f.value(i, j).imag())});
    }
  }
  return out;
}

std::string to_csv(const FourierCoefficientSet& c) {
  std::string out = "k,re,im\n";
  for (std::int64_t k = -c.max_index(); k <= c.max_index(); ++k) {
    out += csv_line({std::to_string(k), format_real(c[k].real()), format_real(c[k].imag())});
  }
  return out;
}

std::string to_csv(const RealFourierCoefficientSet& c) {
  std::string out = "k,a,b\n";
  for (std::int64_t k = 0; k <= c.max_index(); ++k) {
    out += csv_line({std::to_string(k), format_real(c.a(k)), k == 0 ? "" : format_real(c.b(k))});
  }
  return out;
}

std::string to_csv(const ContinuousSpectrum& s) {
  std::string out = "lambda,sigma,tau,re,im\n";
  for (std::size_t i = 0; i < s.lambda_grid().size(); ++i) {
    out += csv_line({format_real(s.lambda_grid()[i]), "", "", format_real(s.values()[i].real()),
                     format_real(s.values()[i].imag())});
  }
  return out;
}

std::string to_csv(const LaplaceSpectrum& s) {
  std::string out = "lambda,sigma,tau,re,im\n";
  for (std::size_t j = 0; j < s.tau_grid().size(); ++j) {
    out += csv_line({"", format_real(s.sigma()), format_real(s.tau_grid()[j]),
                     format_real(s.values()[j].real()), format_real(s.values()[j].imag())});
  }
  return out;
}

std::string to_csv(const FourierLaplaceSpectrum& s) {
  std::string out = "lambda,sigma,tau,re,im\n";
  for (std::size_t i = 0; i < s.lambda_grid().size(); ++i) {
    for (std::size_t j = 0; j < s.tau_grid().size(); ++j) {
      out += csv_line({format_real(s.lambda_grid()[i]), format_real(s.sigma()),
                       format_real(s.tau_grid()[j]), format_real(s.value(i, j).real()),
                       format_real(s.value(i, j).imag())});
    }
  }
  return out;
}

}  // namespace unitransform::io
