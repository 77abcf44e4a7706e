#pragma once

#include <stdexcept>
#include <string>

namespace aqftop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violation: mismatched degrees, dimensions, colors, ...
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a structural axiom; the message names a witness.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured size bound.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line` and `column` are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, int column,
             const std::string& what)
      : Error(source + ":" + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace aqftop
