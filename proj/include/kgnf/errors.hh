#pragma once

#include <stdexcept>
#include <string>

namespace kgnf {

// Invalid configuration / arguments (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numerical failure: blow-up, NaN, non-convergent quadrature
// (CLI exit code 3).
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kgnf
