#pragma once

#include <stdexcept>
#include <string>

namespace stsnow {

// Inconsistent dimensions, bad options, malformed grids.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid data values (nonpositive design s.e., duplicate dates, ...).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter combinations outside the admissible region (non-PSD blocks, ...).
struct ParameterError : std::runtime_error {
  explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

// Singular innovation covariance after regularization, rank failures.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stsnow
