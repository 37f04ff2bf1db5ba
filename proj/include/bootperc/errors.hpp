#pragma once

#include <stdexcept>

namespace bootperc {

// Invalid user-supplied parameter. The CLI maps this to exit code 2.
struct param_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Filesystem failure (unreadable input, unwritable output). CLI exit code 3.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal numeric failure, e.g. a root bracket that cannot be established.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bootperc
