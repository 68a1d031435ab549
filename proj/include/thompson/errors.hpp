#pragma once

#include <stdexcept>
#include <string>

namespace thompson {

/// Raised when a size/degree guard would be exceeded (CLI exit code 3).
class GuardViolation : public std::length_error {
 public:
  explicit GuardViolation(const std::string& what) : std::length_error(what) {}
};

}  // namespace thompson
