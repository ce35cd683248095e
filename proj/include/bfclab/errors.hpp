#pragma once

#include <stdexcept>
#include <string>

namespace bfclab {

// malformed user input: CLI maps this to exit code 2
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a size cap was exceeded: CLI maps this to exit code 3
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bfclab
