#pragma once

#include <stdexcept>
#include <string>

namespace rlen {

/// Bad arguments or configuration (CLI exit code 2).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input data violates a precondition, e.g. values outside [0,1],
/// nonstationary AR coefficients, malformed CSV (CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric degeneracy: empty S(m), vanishing denominators, non-positive
/// determinants, degenerate fits (CLI exit code 4).
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rlen
