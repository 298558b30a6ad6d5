#pragma once

#include <stdexcept>
#include <string>

namespace levyconv {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range argument.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A negative power or inverse was requested of a generator with a zero
/// eigenvalue.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Sample grid too coarse for the requested projection order.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Work or memory estimate over budget. Carries the largest feasible setting.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, int largest_feasible)
      : Error(what), largest_feasible_(largest_feasible) {}
  int largest_feasible() const noexcept { return largest_feasible_; }

 private:
  int largest_feasible_;
};

/// Hypothesis of a bound or experiment not met by the scenario.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent experiment configuration (e.g. two scenarios whose laws differ).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

}  // namespace levyconv
