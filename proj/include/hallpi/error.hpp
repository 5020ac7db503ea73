#pragma once

#include <stdexcept>
#include <string>

namespace hallpi {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (descriptor, prime list, cycle notation, ...).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Well-formed input that violates a domain constraint.
class ConstraintError : public Error {
public:
  using Error::Error;
};

/// The requested data is not implemented for this group family.
class UnsupportedFamily : public Error {
public:
  using Error::Error;
};

/// The descriptor is valid but has no permutation construction.
class NotConstructible : public Error {
public:
  using Error::Error;
};

/// A configured degree/enumeration cap would be exceeded.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// A search ran out of its time budget before reaching a verdict.
/// Never to be confused with a proof of non-existence.
class Inconclusive : public Error {
public:
  using Error::Error;
};

/// Internal consistency failure; always indicates a bug.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

} // namespace hallpi
