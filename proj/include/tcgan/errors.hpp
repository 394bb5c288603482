#pragma once

#include <stdexcept>
#include <string>

namespace tcgan {

// Shape mismatch between operands (reports both shapes in the message).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Violated precondition: bad flag, degenerate input, oversubscription.
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Class id or row index out of range.
struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Malformed, truncated, or version-mismatched file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite value encountered during training.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tcgan
