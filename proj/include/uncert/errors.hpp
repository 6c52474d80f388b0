#ifndef UNCERT_ERRORS_HPP
#define UNCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uncert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotNormalized : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct ZeroVector : Error {
  using Error::Error;
};

struct EmptyFamily : Error {
  using Error::Error;
};

struct IntervalMismatch : Error {
  using Error::Error;
};

struct GridMismatch : Error {
  using Error::Error;
};

// Thrown when a state fails the boundary law of a momentum extension.
struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

struct UnsupportedInterval : Error {
  using Error::Error;
};

struct InvalidParity : Error {
  using Error::Error;
};

struct BrokenPhase : Error {
  using Error::Error;
};

struct DegenerateSpectrum : Error {
  using Error::Error;
};

struct MissingC : Error {
  using Error::Error;
};

struct CommonEigenvectors : Error {
  using Error::Error;
};

struct NumericalFailure : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace uncert

#endif  // UNCERT_ERRORS_HPP
