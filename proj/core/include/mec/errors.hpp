#pragma once

#include <stdexcept>
#include <string>

namespace mec {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors of incompatible lengths, ragged inputs, bad axis indices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Values outside their domain: negative masses, sums away from one,
/// parameters out of range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive routines refusing inputs above their size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A witness system that fails to reproduce the coupling.
class CertificationError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant of a solver failed. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mec
