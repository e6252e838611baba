#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropline {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotUltrametric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidTree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonGenericPair : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a turning point between a generic pair falls outside the
/// NoChange / SingleNNI / FourClade trichotomy. Either a bug or bad input.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Syntax error in a text input, with a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace tropline
