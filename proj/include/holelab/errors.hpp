#pragma once

#include <stdexcept>
#include <string>

namespace holelab {

// Raised when a computation cannot produce a trustworthy number, e.g. a zero
// sits on the counting contour or a factorization meets a nonpositive pivot.
// Precondition violations use std::invalid_argument instead.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace holelab
