#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twirl {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A group (or matrix-group closure) is larger than the requested cap.
struct CapExceeded : Error {
  using Error::Error;
};

// A weighted character sum that must be a nonnegative integer is not one;
// indicates a corrupted table.
struct NonIntegerResult : Error {
  using Error::Error;
};

// Simultaneous eigenspace splitting stalled; must not happen on valid input.
struct InternalSplitFailure : Error {
  using Error::Error;
};

// Text input did not conform to the expected grammar or file format.
struct ParseError : Error {
  std::size_t line = 0;  // 1-based, 0 = unknown
  std::size_t column = 0;
  ParseError(const std::string& msg, std::size_t line_ = 0, std::size_t col_ = 0)
      : Error(msg), line(line_), column(col_) {}
};

// A parsed object violates a structural invariant (e.g. orthogonality).
struct ValidationError : Error {
  using Error::Error;
};

// Requested tensor-power dimension exceeds the memory guard.
struct DimensionGuard : Error {
  using Error::Error;
};

// The isotypic projector has (numerically) zero trace: the requested
// component does not occur at this tensor power.
struct MultiplicityZero : Error {
  using Error::Error;
};

// Random commutant splitting failed to separate eigenvalue clusters.
struct DegenerateSplit : Error {
  using Error::Error;
};

}  // namespace twirl
