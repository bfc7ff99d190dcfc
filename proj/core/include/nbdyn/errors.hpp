#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nbdyn {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

// Input violates a structural rule (self-loop, non-permutation, too few rows).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A vertex id, index or layer number outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of a function (e.g. k >= n).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Eigensolver, power iteration or SMO failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Unknown parameter code.
class RegistryError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition between modules.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace nbdyn
