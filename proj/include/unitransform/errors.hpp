#pragma once

#include <stdexcept>
#include <string>

namespace unitransform {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (bad parameter, wrong problem kind).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Numerical failures. The CLI maps these to exit status 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The integrand produced a non-finite value.
class EvaluationError : public NumericalError {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : NumericalError(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// Adaptive quadrature could not reach its tolerance.
class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Half-line integrand is not decaying at the truncation point.
class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Sample spacing too coarse for the requested evaluation range.
class AliasingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A truncated integral leaves a non-negligible tail.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Fewer usable samples than a fit requires.
class InsufficientDataError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace unitransform
