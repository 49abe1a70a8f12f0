#pragma once

#include <stdexcept>
#include <string>

namespace mcs {

// Each error class maps onto one CLI exit code (see tools/mcs.cpp).

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exact oracle would exceed its vertex or time budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a requested instance exceeds the configured vertex budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replicator step with a vanishing mean payoff, or noise that clipped to zero.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A produced solution failed verification. Always a bug.
class ValidationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mcs
