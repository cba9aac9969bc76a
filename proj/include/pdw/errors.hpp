#pragma once

#include <stdexcept>
#include <string>

namespace pdw {

/// A quantity that should be positive vanished numerically (for example
/// ∫_D |f|² for a nonzero positive definite f).
class NumericalDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed: a construction disagrees with its
/// closed form, a solver returned an impossible status, or a bound chain is
/// out of order.
class SolverDefect : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pdw
