#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pbands {

// Input violates a mathematical precondition (bad phase, odd period for an
// even-only construction, non-unit direction, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A run configuration is rejected before any compute starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical kernel failed. Carries the phase at which it happened.
class ComputationError : public std::runtime_error {
 public:
  ComputationError(const std::string& what, std::vector<double> theta)
      : std::runtime_error(what), theta_(std::move(theta)) {}

  const std::vector<double>& theta() const noexcept { return theta_; }

 private:
  std::vector<double> theta_;
};

}  // namespace pbands
