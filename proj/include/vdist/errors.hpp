#pragma once

#include <stdexcept>
#include <string>

namespace vdist {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Distribution parameters outside their admissible set (sigma <= 0, p outside (0,1), ...).
struct ConstraintViolation : Error {
  using Error::Error;
};

// Natural form (or closed form) requested for a family that has none.
struct UnsupportedFamily : Error {
  using Error::Error;
};

// Fewer than two usable support points.
struct InsufficientSupport : Error {
  using Error::Error;
};

// Two tables compared on different supports.
struct SupportMismatch : Error {
  using Error::Error;
};

// A density vanished (or underflowed) where strict positivity is required.
struct ZeroDensity : Error {
  using Error::Error;
};

// A two-point formula evaluated at coincident observations.
struct DegenerateSupport : Error {
  using Error::Error;
};

// Arguments outside an operation's domain (infeasible bounds, bad region, ...).
struct DomainError : Error {
  using Error::Error;
};

// Fewer than two candidates survived disqualification.
struct SelectionImpossible : Error {
  using Error::Error;
};

// Malformed external input (CSV, JSON, model string, region string).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace vdist
