#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gg {

// Base for every error raised by the library. The harness maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (map JSON, program source, config file).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A program reference that cannot be bound to a concrete map item.
class BindingError : public Error {
 public:
  using Error::Error;
};

class TokenizationError : public Error {
 public:
  using Error::Error;
};

// Scoring backend could not be reached or refused the request.
class BackendError : public Error {
 public:
  using Error::Error;
};

class OracleTooLargeError : public Error {
 public:
  OracleTooLargeError(double size, double limit)
      : Error("oracle enumeration size " + std::to_string(size) +
              " exceeds limit " + std::to_string(limit)),
        size_(size) {}
  double size() const { return size_; }

 private:
  double size_;
};

}  // namespace gg
