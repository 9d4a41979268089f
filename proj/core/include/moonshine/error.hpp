#pragma once

#include <stdexcept>
#include <string>

namespace moonshine {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation ran out of known coefficients. `required` is the input
/// precision that would have been enough, or 0 when unknown.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what, long long required = 0)
      : Error(what), required_(required) {}
  long long required() const noexcept { return required_; }

 private:
  long long required_;
};

/// An argument violated a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input documents (JSON, q-expansion text).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace moonshine
