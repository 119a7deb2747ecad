#pragma once

#include <stdexcept>
#include <string>

namespace parkplan {

/// Base class for all recoverable errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometry construction failures.
struct DegenerateEdges : Error {
  using Error::Error;
};
struct UnboundedPolygon : Error {
  using Error::Error;
};
struct EmptyPolygon : Error {
  using Error::Error;
};

// Constraint-block assembly.
struct ShapeMismatch : Error {
  using Error::Error;
};
struct LengthMismatch : Error {
  using Error::Error;
};
struct InfeasibleBoundary : Error {
  using Error::Error;
};

// Guess generation.
struct GuessSolveFailed : Error {
  using Error::Error;
};
struct NoPathFound : Error {
  using Error::Error;
};

// Solver plumbing and output.
struct BackendUnavailable : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace parkplan
