#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tbc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible ambient spaces.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computation was refused because it exceeds a configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The cipher model does not apply (e.g. key schedule not surjective).
class ModelNotApplicable : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace tbc
