#pragma once

#include <stdexcept>
#include <string>

namespace trussopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model violates one of its structural invariants.
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

/// A member's deformed end nodes coincide, so its direction is undefined.
class DegenerateMemberError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidDomainError : public Error {
 public:
  using Error::Error;
};

/// Input file could not be parsed; the message carries the offending location.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace trussopt
