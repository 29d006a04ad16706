#pragma once

#include <stdexcept>
#include <string>

namespace heatclust {

// Malformed input file; `line` is 1-based and refers to the offending row.
class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t line, const std::string& what_arg)
        : std::runtime_error("line " + std::to_string(line) + ": " + what_arg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Non-finite values or a failed numerical routine somewhere in the pipeline.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The spectral stage found no eigenvalue within tolerance of 1. A correct
// heat operator always has at least one, so this signals an upstream failure.
class NoUnitEigenvalue : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Column-pivoted elimination hit a pivot below threshold: the eigenbasis is
// numerically rank deficient.
class DegenerateEigenbasis : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace heatclust
