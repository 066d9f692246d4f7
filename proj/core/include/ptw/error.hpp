#pragma once

#include <stdexcept>
#include <string>

namespace ptw {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. x outside the well).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition does not hold (parity, integrality, sizes).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An intermediate quantity left the representable range of a double.
class NumericRangeError : public Error {
 public:
  using Error::Error;
};

/// An iterative or truncated series failed to reach its tolerance before a cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A quadrature or grid cannot meet its sampling criterion within the memory cap.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share parameters or grids do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A phase-space measurement could not be taken (no extremum, walk left the window, ...).
class MeasurementError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptw
