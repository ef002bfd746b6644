#pragma once

#include <stdexcept>
#include <string>

namespace tollbooth {

// Malformed input: bad tree, bad customer, bad scheme, bad config.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An enumeration would exceed its configured cap and fallback sampling is off.
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant broken; always a bug.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tollbooth
