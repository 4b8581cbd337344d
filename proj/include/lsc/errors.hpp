#pragma once

#include <stdexcept>
#include <string>

namespace lsc {

// Tuple lengths or board shapes disagree.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A coordinate or axis index is outside the board.
struct CoordinateError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// An operation was asked for a value outside its domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A supported-size guard tripped (board too big, exhaustive search too wide).
struct SizeLimitError : std::length_error {
  using std::length_error::length_error;
};

// A grid or rook placement breaks the Latin property.
struct LatinError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed text input.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative normalization did not reach the requested tolerance.
struct ConvergenceError : std::runtime_error {
  double residual;
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), residual(achieved) {}
};

}  // namespace lsc
