#pragma once

#include <stdexcept>
#include <string>

namespace ho {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument lies outside the domain of an operation (bad sizes, ordering,
/// coupling or contour conditions).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Argument sits on (or within tolerance of) a pole of a meromorphic function.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Argument sits on a zero where a logarithm was requested.
class ZeroError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Inputs coincide with a singular hyperplane of a rational identity.
class DegenerateInput : public DomainError {
public:
    using DomainError::DomainError;
};

/// Numerical procedure failed to reach its target accuracy.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class DepthExceeded : public ConvergenceError {
public:
    DepthExceeded(const std::string& what, int level, double value_re, double value_im,
                  double abs_err)
        : ConvergenceError(what), level_(level), re_(value_re), im_(value_im), err_(abs_err) {}

    /// Nesting level that failed (0 = outermost).
    int level() const noexcept { return level_; }
    double partial_re() const noexcept { return re_; }
    double partial_im() const noexcept { return im_; }
    double partial_err() const noexcept { return err_; }

private:
    int level_;
    double re_, im_, err_;
};

class NonFinite : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class NonConvergence : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class Divergence : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class StepTooLarge : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

}  // namespace ho
