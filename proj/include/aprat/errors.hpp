#pragma once

#include <stdexcept>
#include <string>

namespace aprat {

// Malformed or out-of-contract input (CLI exit code 2).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured enumeration cap was exceeded (CLI exit code 3).
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace aprat
