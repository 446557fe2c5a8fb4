#pragma once

#include <stdexcept>
#include <string>

namespace basic_hodge {

/// A generated structure violates J² = −I, ω0-compatibility or det g = 1.
struct InvalidStructure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nullspace dimension lacks a 100× eigenvalue gap.
struct AmbiguousNullspace : std::runtime_error {
  using std::runtime_error::runtime_error;
  double certificate = 0.0;
  AmbiguousNullspace(const std::string& what, double cert) : std::runtime_error(what), certificate(cert) {}
};

/// Iterative solver exhausted its budget.
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace basic_hodge
