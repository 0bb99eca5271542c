#pragma once

#include <stdexcept>
#include <string>

namespace cvxtalk {

// Argument outside the physical or mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Mode index out of range, duplicated, or otherwise inconsistent.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Shape mismatch between operands.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Failure of a numerical procedure (factorization, non-finite objective, ...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Root bracket without a sign change.
class BracketError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace cvxtalk
