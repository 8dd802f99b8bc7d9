#pragma once

#include <stdexcept>
#include <string>

namespace sortlab {

// Bad input: malformed plan, unbalanced dataset, argument out of domain.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation failed to produce a trustworthy result (non-convergence,
// a sort that returned unsorted output).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sortlab
