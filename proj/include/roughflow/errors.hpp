#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace roughflow {

/// Numerical failure (as opposed to a malformed argument, which raises
/// std::invalid_argument). CLI maps these to exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A tensor that should have been a free-Lie-algebra element was not,
/// within tolerance. Carries the basis-projection residual.
class NotLieElementError : public NumericError {
public:
    NotLieElementError(const std::string& what, double residual)
        : NumericError(what), residual(residual) {}
    double residual;
};

/// Raised when a driver increment fails the geometricity check required
/// by the step-field construction.
class NonGeometricError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Step-map integration produced a non-finite state.
class DivergenceError : public NumericError {
public:
    DivergenceError(const std::string& what, double internal_time)
        : NumericError(what), internal_time(internal_time) {}
    double internal_time;
};

/// Dyadic refinement stopped making progress. Carries the per-level
/// sup-differences observed before giving up.
class NonCauchyError : public NumericError {
public:
    NonCauchyError(const std::string& what, std::vector<double> diffs)
        : NumericError(what), level_diffs(std::move(diffs)) {}
    std::vector<double> level_diffs;
};

}  // namespace roughflow
