#pragma once

#include <stdexcept>
#include <string>

namespace rieszwell {

/// A precondition of an operation was violated (bad order, bad grid, bad
/// parameter). Always recoverable by fixing the input.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input or intermediate data contained NaN or Inf.
class NonFiniteError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Argument hit a pole of the gamma function (z = 0, -1, -2, ...).
class GammaPoleError : public DomainError {
public:
    explicit GammaPoleError(double z)
        : DomainError("gamma: pole at z = " + std::to_string(z)), z_(z) {}
    double where() const noexcept { return z_; }

private:
    double z_;
};

/// An iterative numerical procedure exhausted its refinement budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rieszwell
