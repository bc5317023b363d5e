#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perigp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A symmetric matrix could not be Cholesky-factorized within the jitter cap.
struct FactorizationFailure : Error {
    using Error::Error;
};

/// A sub-model accessor was asked for a component the kernel does not have.
struct MissingComponent : Error {
    using Error::Error;
};

/// Every optimizer restart failed to produce a finite objective value.
struct AllRestartsFailed : Error {
    using Error::Error;
};

/// Too many Monte-Carlo realisations had a vanishing total variance.
struct DegenerateDenominator : Error {
    using Error::Error;
};

/// Regression design matrix is singular (e.g. all inputs identical).
struct DegenerateDesign : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t row, std::size_t col)
        : Error(what + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")"),
          row(row),
          col(col) {}
    std::size_t row;
    std::size_t col;
};

/// A CSV series contained no usable observations.
struct EmptySeries : Error {
    using Error::Error;
};

/// Bad run configuration (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace perigp
