#pragma once

#include <stdexcept>
#include <string>

namespace barnesg {

/// Argument outside the domain where a formula is defined.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Argument sits on a pole (Gamma at a non-positive integer, G(1+z) at z = -1, -2, ...).
class PoleError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Invalid distribution parameter (non-positive shape, bad matrix size, ...).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative procedure exhausted its budget before meeting its target.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A non-finite value would escape an operation.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace barnesg
