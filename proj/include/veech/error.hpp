#pragma once

#include <stdexcept>
#include <string>

namespace veech {

// Precondition violated by the caller (mixed fields, non-canonical point,
// empty vertex set, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap was hit.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something the mathematics guarantees did not happen. Always a bug.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Iterative numerics failed to reach the requested accuracy.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace veech
