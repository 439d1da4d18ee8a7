#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

/// Invalid input or configuration (bad dimension, index, exponent, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance or produced a
/// non-finite value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace riesz
