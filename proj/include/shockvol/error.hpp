#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shockvol {

// Argument validation failures use std::invalid_argument / std::out_of_range.
// The types below cover the remaining failure classes callers need to tell apart.

/// Malformed or non-positive input data; carries the 1-based data row when known.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t row = 0)
        : std::runtime_error(row ? what + " (row " + std::to_string(row) + ")" : what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Data that is well formed but cannot support the estimate (zero moments, zero variance).
class DegenerateDataError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadrature or other numerical procedure did not reach its tolerance.
class NumericFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Instantaneous volatility requested exactly at a shock epoch with D < 1/2.
class SingularPointError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Parameters that violate a moment constraint or make a theoretical quantity nonpositive.
class InvalidParameter : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// No start point of the calibration produced a finite loss.
class FitFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace shockvol
