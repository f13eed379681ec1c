#pragma once

#include <stdexcept>
#include <string>

namespace garchx {

/// Input data cannot support the requested computation: malformed files,
/// degenerate or too-short series, disjoint date ranges.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure produced a non-finite value or could not proceed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace garchx
