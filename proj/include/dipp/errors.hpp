#pragma once

#include <stdexcept>
#include <string>

#include "dipp/support_set.hpp"

namespace dipp {

/// Raised when a caller violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A least-squares system restricted to `support` was numerically rank deficient.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(std::string stage, SupportSet support);

  const std::string& stage() const noexcept { return stage_; }
  const SupportSet& support() const noexcept { return support_; }

 private:
  std::string stage_;
  SupportSet support_;
};

/// Exhaustive enumeration would exceed the combinatorial budget.
class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dipp
