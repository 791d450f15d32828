#pragma once

#include <stdexcept>
#include <string>

namespace mkc {

// Bad arguments, shape mismatches, malformed files. CLI exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Robustness-bound admissibility violations; the message names the
// inequality that failed.
struct AdmissibilityError : InputError {
  using InputError::InputError;
};

// Numerical breakdown (quadrature underflow, non-finite results). Exit 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Normal matrix not solvable even after the ridge guard.
struct SingularMatrixError : NumericError {
  SingularMatrixError(const std::string& what, double condition)
      : NumericError(what), condition_number(condition) {}
  double condition_number;
};

// Quadric recovered by the ellipsoid fit is not an ellipsoid.
struct GeometryError : NumericError {
  using NumericError::NumericError;
};

}  // namespace mkc
