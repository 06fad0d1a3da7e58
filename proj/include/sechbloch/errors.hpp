#pragma once

#include <stdexcept>
#include <string>

#include "sechbloch/bloch_state.hpp"

namespace sechbloch {

/// Argument outside the mathematical domain of an operation (negative
/// parameters, poles, z outside [0, 1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical failure of the Bloch integrator. Carries the last state that
/// was accepted by the step controller.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double last_time, BlochState last_state)
      : std::runtime_error(what), last_time_(last_time), last_state_(last_state) {}

  double last_time() const noexcept { return last_time_; }
  const BlochState& last_state() const noexcept { return last_state_; }

 private:
  double last_time_;
  BlochState last_state_;
};

class StepLimitExceeded : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

class StepSizeUnderflow : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

/// A bracketing search could not establish a sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sechbloch
