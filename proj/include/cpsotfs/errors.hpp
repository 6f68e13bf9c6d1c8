#pragma once

#include <stdexcept>
#include <string>

namespace cpsotfs {

/// Invalid or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural identity that must hold exactly (up to rounding) did not.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear system too ill-conditioned to solve reliably.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_(condition_estimate) {}

    double condition_estimate() const { return condition_; }

private:
    double condition_;
};

/// An operation was called on inputs that violate its documented precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cpsotfs
