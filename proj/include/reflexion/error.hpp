#pragma once

#include <stdexcept>
#include <string>

namespace reflexion {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad group specifier, file syntax, argument out of domain.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Input that parses but violates an operation's precondition (dimension
/// mismatch, zero polynomial where a nonzero one is required, ...).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// A configured resource cap (group order, conductor size, search budget) was hit.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// A mathematical invariant that must hold did not. Always a bug or a bad input model.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// Raised when an operation requires a regular number and got a non-regular one.
class NotRegular : public Error {
public:
  using Error::Error;
};

} // namespace reflexion
