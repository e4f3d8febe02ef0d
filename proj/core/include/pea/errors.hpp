#pragma once

#include <stdexcept>

namespace pea {

// Invalid configuration or arguments; maps to CLI exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Runtime numerical failure (CFL violation, blow-up, non-finite values);
// maps to CLI exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pea
