#pragma once

#include <stdexcept>
#include <string>

namespace exqmc {

// Operands carry different bases where one common base is required.
class BaseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A brute-force routine was asked for more work than its configured cap.
// The CLI maps this to its own exit code.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace exqmc
