#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

/// Base for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input matrix is not a valid density (Hermiticity, trace or positivity).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A precondition on arguments was violated (empty plan, r1 outside [0,1], ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Integration left the physical region or produced non-finite values.
class StepDiverged : public Error {
 public:
  StepDiverged(double time, const std::string& what)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Post-selection probability of a Kraus step vanished.
class DegenerateNormalization : public Error {
 public:
  using Error::Error;
};

class MissingMomenta : public Error {
 public:
  using Error::Error;
};

/// theta_rhs called with b != 0: the y-z plane ansatz does not apply.
class PlaneLeavingInteraction : public Error {
 public:
  using Error::Error;
};

/// No frozen angle exists for the requested lambda.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Interaction has no drift direction (a+c = 0 or 4d^2+(a-c)^2 = 0).
class DegenerateInteraction : public Error {
 public:
  using Error::Error;
};

}  // namespace zeno
