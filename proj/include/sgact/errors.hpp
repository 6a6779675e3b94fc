#pragma once

#include <stdexcept>
#include <string>

namespace sgact {

/// Invalid input: bad generator data, malformed config, out-of-range argument.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative scheme failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : std::runtime_error(what), last_residual(last_residual) {}
    double last_residual;
};

/// Exact integer arithmetic left the 128-bit range.
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sgact
