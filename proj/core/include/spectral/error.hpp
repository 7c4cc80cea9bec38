#pragma once

#include <stdexcept>
#include <string>

namespace spectral {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad size, bad index, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function, e.g. |x| > 1.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computation produced a non-finite value, failed to converge, or hit a
/// singular system. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public NumericalError {
 public:
  SingularSystemError(const std::string& what, double condition_estimate)
      : NumericalError(what), condition_estimate_(condition_estimate) {}

  [[nodiscard]] double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BlowUpError : public NumericalError {
 public:
  BlowUpError(const std::string& what, double time, std::size_t step)
      : NumericalError(what), time_(time), step_(step) {}

  [[nodiscard]] double time() const noexcept { return time_; }
  [[nodiscard]] std::size_t step() const noexcept { return step_; }

 private:
  double time_;
  std::size_t step_;
};

}  // namespace spectral
