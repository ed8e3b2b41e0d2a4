#pragma once

#include <stdexcept>
#include <string>

namespace michelson {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical or run configuration (non-positive mass, empty sweep, ...).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Two sampled quantities do not live on compatible frequency grids.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a pole or outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// First-order expansion in the mirror displacement is no longer meaningful.
class LinearizationError : public Error {
 public:
  LinearizationError(const std::string& message, double ratio)
      : Error(message), ratio_(ratio) {}
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

}  // namespace michelson
