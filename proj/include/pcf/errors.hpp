#pragma once

#include <stdexcept>
#include <string>

namespace pcf {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Raised when scalars from different backends meet.
class BackendMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFinite : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The minimal polynomial has a nonconstant factor without roots in the field.
class NonSplitField : public std::runtime_error {
 public:
  explicit NonSplitField(std::string residual)
      : std::runtime_error("polynomial does not split over the field; residual factor " + residual),
        residual_(std::move(residual)) {}

  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string residual_;
};

class NegativeEvalOnDelta : public std::domain_error {
 public:
  NegativeEvalOnDelta()
      : std::domain_error("cannot evaluate a Kronecker atom at a negative index") {}
};

class TailMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConjugacyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed object failed one of its defining identities.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pcf
