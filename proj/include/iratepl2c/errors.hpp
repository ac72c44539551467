#pragma once

#include <stdexcept>
#include <string>

namespace iratepl2c {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: model DSL, choice files, literal lists.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, int line = 0, int column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    std::string where = "line " + std::to_string(line);
    if (column > 0) where += ", col " + std::to_string(column);
    return where + ": " + message;
  }

  int line_;
  int column_;
};

/// Well-formed input that violates a model or configuration invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A tree completion hit a feature whose negation is part of the
/// configuration.
class CompletionError : public Error {
 public:
  using Error::Error;
};

/// Engine contract violations (iteration cap, ledger gaps). These signal
/// bugs, not bad input.
class EngineError : public Error {
 public:
  using Error::Error;
};

}  // namespace iratepl2c
