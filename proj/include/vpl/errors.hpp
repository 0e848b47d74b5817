#pragma once

#include <stdexcept>
#include <string>

namespace vpl {

/// Argument outside the mathematical domain of a kernel or rate function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physically or structurally invalid parameters (config, fiber, sweep).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature, root-finding or time integration failed to meet its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vpl
