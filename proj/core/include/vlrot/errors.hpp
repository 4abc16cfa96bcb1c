#pragma once

#include <stdexcept>
#include <string>

namespace vlrot {

/// Bad configuration (file syntax, invalid keys/values, inconsistent setup).
/// CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical abort (CFL violation, NaN, zero norm, ...).
/// CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vlrot
