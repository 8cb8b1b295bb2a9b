#pragma once

// Interchange file formats. All writers are deterministic: fixed field order
// and every floating-point number printed with 17 significant digits.
//
//   function    {"kind":"function","grid":[...],"values":[[re,im],...],"meta":{...}}
//   function2d  {"kind":"function2d","x_grid":[...],"t_grid":[...],
//                "values":[[[re,im],...],...],"meta":{...}}     values[i][j] = f(x_i, t_j)
//   coefficients {"kind":"fourier-coefficients","L":..,"K":..,"c":[[k,re,im],...],"meta":{...}}
//   real coefficients {"kind":"real-fourier-coefficients","L":..,"K":..,
//                "a":[[k,a_k],...],"b":[[k,b_k],...],"meta":{...}}
//   spectrum    {"kind":"spectrum","convention":"paper-fourier"|"laplace-line"|"fourier-laplace",
//                "lambda_grid":[...],"sigma":..,"tau_grid":[...],"values":[[re,im],...],"meta":{...}}
//
// Spectrum values are lambda-major for fourier-laplace (index i * n_tau + j);
// paper-fourier files carry "sigma":null and an empty tau_grid, laplace-line
// files an empty lambda_grid.

#include <string>
#include <variant>

#include "json.hpp"

#include "unitransform/errors.hpp"
#include "unitransform/fourier_laplace.hpp"
#include "unitransform/fourier_series.hpp"
#include "unitransform/fourier_transform.hpp"
#include "unitransform/laplace.hpp"

namespace unitransform::io {

using Json = nlohmann::ordered_json;

/// Input document does not match its schema.
class FormatError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// Compact single-line JSON; doubles as %.17g, non-finite doubles as null.
std::string dump(const Json& doc);

Json complex_pair(Complex v);
Json grid_array(const Grid& grid);

Json function_file(const SampledFunction& f, Json meta = Json::object());
Json function2d_file(const SampledFunction2D& f, Json meta = Json::object());
Json coefficient_file(const FourierCoefficientSet& c, Json meta = Json::object());
Json real_coefficient_file(const RealFourierCoefficientSet& c, Json meta = Json::object());
Json spectrum_file(const ContinuousSpectrum& s, Json meta = Json::object());
Json spectrum_file(const LaplaceSpectrum& s, Json meta = Json::object());
Json spectrum_file(const FourierLaplaceSpectrum& s, Json meta = Json::object());

SampledFunction read_function_file(const Json& doc);
SampledFunction2D read_function2d_file(const Json& doc);
FourierCoefficientSet read_coefficient_file(const Json& doc);
RealFourierCoefficientSet read_real_coefficient_file(const Json& doc);

using AnySpectrum = std::variant<ContinuousSpectrum, LaplaceSpectrum, FourierLaplaceSpectrum>;
AnySpectrum read_spectrum_file(const Json& doc);

/// CSV exports, one row per grid point, with a header line.
///   function:          x,re,im
///   function2d:        x,t,re,im
///   coefficients:      k,re,im
///   real coefficients: k,a,b          (b empty for k = 0)
///   spectrum:          lambda,sigma,tau,re,im   (unused columns empty)
std::string to_csv(const SampledFunction& f);
std::string to_csv(const SampledFunction2D& f);
std::string to_csv(const FourierCoefficientSet& c);
std::string to_csv(const RealFourierCoefficientSet& c);
std::string to_csv(const ContinuousSpectrum& s);
std::string to_csv(const LaplaceSpectrum& s);
std::string to_csv(const FourierLaplaceSpectrum& s);

/// %.17g
std::string format_real(double v);

}  // namespace unitransform::io
