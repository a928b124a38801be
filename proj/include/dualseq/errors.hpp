#pragma once

#include <stdexcept>
#include <string>

namespace dualseq {

/// An input violates a documented invariant (shapes, differential laws, exactness).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotExact : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Window widening reached the configured depth before the computed
/// dimensions settled.
class StabilizationDepthExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dualseq
