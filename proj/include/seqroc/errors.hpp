#pragma once

#include <stdexcept>
#include <string>

namespace seqroc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (bad covariance, out-of-range fractions, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Base for numerical failures that make a marker "not evaluable".
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SeparationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularDesignError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateSampleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Z statistic cannot be formed (zero or negative variance estimate).
class DegenerateStatisticError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; `row()` is the 1-based data row (0 for header).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace seqroc
