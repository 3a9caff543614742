#pragma once

#include <stdexcept>
#include <string>

namespace hermlag {

/// Argument outside the mathematical domain of an operation (poles, ν ≤ n−1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Rank or coordinate-count mismatch between operands.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Matrix index outside 0..n-1.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Lie algebra parameters violating the block-shape invariants.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact linear solve failed: singular system or target outside the span.
class SolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input matrix is not Hermitian within tolerance.
class NotHermitianError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hermlag
