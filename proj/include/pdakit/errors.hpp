#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdakit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A request would materialize more cells than the configured cap allows.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The array does not have the structure an operation requires (e.g. unequal
/// star counts where a well-defined Z is needed).
class PdaError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pdakit
