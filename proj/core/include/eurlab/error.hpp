#pragma once

#include <stdexcept>

namespace eurlab {

// Raised whenever an operation's precondition on its inputs is violated
// (shape mismatch, non-finite data, out-of-range index, bad parameter).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace eurlab
