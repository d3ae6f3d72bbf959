#pragma once

#include <stdexcept>
#include <string>

namespace p3mod {

/// Raised when an enumeration or coupled-system computation would exceed
/// its configured budget (CLI exit code 2).
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace p3mod
