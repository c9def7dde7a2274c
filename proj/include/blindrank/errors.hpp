#pragma once

#include <stdexcept>
#include <string>

namespace blindrank {

// Error categories map 1:1 onto CLI exit codes (see tools/main.cpp):
// ConfigError -> 2, DataError -> 3, NumericError -> 4.

/// Invalid parameters or configuration (bad probability, unknown filter name, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (missing CSV columns, dimension mismatch, ...).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical degeneracy or solver failure (zero eigengap, non-convergence, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blindrank
