#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace issprobe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments to a constructor or factory. The CLI maps these to exit code 1.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class NotOrthonormal : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class ImproperParameters : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Failures of a numerical experiment rather than of its inputs (exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainEscape : public NumericalError {
 public:
  explicit DomainEscape(std::size_t step)
      : NumericalError("trajectory left the domain box at step " + std::to_string(step)),
        step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class ImproperSchedule : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class Divergent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroMass : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroScale : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegeneratePairs : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace issprobe
