#pragma once

#include <stdexcept>
#include <string>

namespace noonsim {

// Precondition violations use std::invalid_argument. Everything below is a
// numerical failure; the CLI maps NumericalError to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real-time integration lost unitarity beyond the accepted drift.
class IntegrationFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Imaginary-time iteration hit its iteration cap. `residual` is the last
/// energy change per step.
class ConvergenceFailure : public NumericalError {
 public:
  ConvergenceFailure(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class AliasingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CalibrationFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DecompositionViolation : public NumericalError {
 public:
  DecompositionViolation(const std::string& what, double max_error)
      : NumericalError(what), max_error_(max_error) {}
  double max_error() const noexcept { return max_error_; }

 private:
  double max_error_;
};

}  // namespace noonsim
