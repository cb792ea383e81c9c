#pragma once

#include <stdexcept>
#include <string>

namespace fermitrap {

/// Base class for every numerical failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The Bogoliubov diagonalization condition is violated (|tanh 2zeta| >= 1 or |V| >= 1/2).
class InstabilityError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested outside the window where an asymptotic formula holds.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A sampled profile is too coarse to resolve the oscillation it is asked about.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// A power-law kernel base reaches zero (vanishing decay constant).
class SingularKernelError : public Error {
public:
    using Error::Error;
};

/// Node doubling exhausted without meeting the tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double previous, double last)
        : Error(what + " (last estimates " + std::to_string(previous) + ", " + std::to_string(last) + ")"),
          previous_(previous), last_(last) {}

    double previous_estimate() const noexcept { return previous_; }
    double last_estimate() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

} // namespace fermitrap
