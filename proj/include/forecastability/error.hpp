#pragma once

#include <stdexcept>
#include <string>

namespace fcast {

// Root of every error the library raises. Callers that only need to know
// "this failed" catch Error; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter value (non-stationary model, x <= 0 for digamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Not enough observations for the requested lag order and horizon.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Estimator configuration inconsistent with the data (k too large, B too small).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Toeplitz correlation matrix is not positive definite.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

// Autocorrelation sequence too short for the requested lags.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Coincident points survive jitter, so a neighbour distance is zero.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

// A profile does not contain a requested horizon.
class MissingHorizon : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fcast
