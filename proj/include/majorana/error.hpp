#pragma once

#include <stdexcept>
#include <string>

namespace majorana {

/// Caller passed arguments that violate a precondition (mismatched sizes,
/// out-of-range indices, non-normalized amplitudes).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input lies outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested problem exceeds the dense-solver budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical precondition did not hold (non-Hermitian operator, parity
/// not conserved, integration step too coarse).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace majorana
