#pragma once

#include <stdexcept>
#include <string>

namespace sepcone {

// Dimension or structural mismatch in an input (non-square, non-Hermitian,
// wrong factor count, rank-deficient where full rank is required).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A metric that must be Hermitian positive definite is not.
struct MetricError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A matrix that must be positive semidefinite has an eigenvalue below the
// negative tolerance band.
struct NotPsdError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Range/face incompatibility: a state lies outside the subspace an operation
// requires, or two states do not share a common range.
struct FaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The ray construction needs two distinct states; the inputs coincide.
struct DegenerateRayError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sepcone
