#pragma once

#include <stdexcept>
#include <string>

namespace steerkit {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input data fails a structural or numerical validity check.
struct ValidationError : Error {
  using Error::Error;
};

// Operands have incompatible or unsupported dimensions.
struct DimensionError : ValidationError {
  using ValidationError::ValidationError;
};

// A matrix required to be Hermitian deviates beyond tolerance.
struct NotHermitianError : ValidationError {
  using ValidationError::ValidationError;
};

// A scalar argument lies outside its admissible range.
struct RangeError : ValidationError {
  using ValidationError::ValidationError;
};

// A lookup key (setting, outcome, tomography index) does not exist.
struct IndexError : ValidationError {
  using ValidationError::ValidationError;
};

// Deterministic-strategy enumeration would exceed the hard cap.
struct TooManyStrategiesError : ValidationError {
  using ValidationError::ValidationError;
};

// A tomography set fails to span the space of Hermitian matrices.
struct RankDeficientError : ValidationError {
  using ValidationError::ValidationError;
};

// A game has a non-positive local bound, so no ratio is defined.
struct DegenerateGameError : ValidationError {
  using ValidationError::ValidationError;
};

// The SDP solver could not certify a result.
struct SolverError : Error {
  using Error::Error;
};

}  // namespace steerkit
