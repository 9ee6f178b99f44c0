#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tacx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration (modulus, budgets, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Input that parses but violates a structural precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Matrix shapes that do not chain.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Adjacent maps whose composite is nonzero where exactness was asked for.
class NotAComplex : public Error {
 public:
  using Error::Error;
};

/// A construction step whose algebraic precondition fails (non-invertible
/// composite coefficient, composite outside the span of f, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A result that contradicts a proven statement; always a bug or bad input model.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Enumeration larger than the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace tacx
