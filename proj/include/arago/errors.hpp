#pragma once

#include <stdexcept>
#include <string>

namespace arago {

/// Input outside the mathematical domain of an operation (non-positive mass, s <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not deliver its contract (quadrature budget,
/// integrator step failure, missing bracket).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root finding was asked to bisect an interval without a sign change.
class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Scenario configuration could not be parsed or validated.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, int column = 0,
              std::string field = {})
      : std::runtime_error(format(message, line, column, field)),
        line_(line),
        column_(column),
        field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& message, int line, int column,
                            const std::string& field) {
    std::string out;
    if (line > 0) {
      out += "line " + std::to_string(line) + ", column " +
             std::to_string(column) + ": ";
    }
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  int line_;
  int column_;
  std::string field_;
};

}  // namespace arago
