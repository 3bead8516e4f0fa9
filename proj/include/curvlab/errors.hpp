#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands of different jet shapes or tensor valences.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An elementary function or operation evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

// A tensor field needs more derivative orders than the point's jets carry.
class JetBudgetError : public Error {
 public:
  using Error::Error;
};

// Invalid builder or configuration parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A structure-level invariant (u > 0 inside, static condition for m = 1, ...)
// does not hold at a sampled point.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// An identity was requested at a point where its hypothesis fails.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace curvlab
