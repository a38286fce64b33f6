#pragma once

#include <stdexcept>
#include <string>

namespace abconvex {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grid lookup farther than step/2 from every lattice point.
struct OutOfDomainGrid : Error {
  using Error::Error;
};

// Evaluator produced no finite value on any grid point.
struct AllInfinite : Error {
  using Error::Error;
};

// Function is +infinity on the whole grid.
struct EmptyDomain : Error {
  using Error::Error;
};

// The intersection of the domains is empty on the grid.
struct EmptyIntersection : Error {
  using Error::Error;
};

// Escape test fired on the negated objective: infimum is -infinity.
struct UnboundedBelow : Error {
  using Error::Error;
};

// An operation would have produced -infinity, which has no representation.
struct NegativeInfinity : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

}  // namespace abconvex
