#pragma once

#include <stdexcept>
#include <string>

namespace rankup {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible matrix dimensions.
struct ShapeError : Error {
    using Error::Error;
};

// SVD sweep budget exhausted.
struct ConvergenceError : Error {
    using Error::Error;
};

// A theorem hypothesis (rank of B_i or G, nonzero w) is violated.
struct HypothesisError : Error {
    using Error::Error;
};

// A caller-side precondition failed (e.g. singular A passed to an
// inverse-only identity).
struct PreconditionError : Error {
    using Error::Error;
};

// The perturbed matrix itself is singular where an inverse was requested.
struct SingularUpdateError : Error {
    using Error::Error;
};

// Matrix / CSV file could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace rankup
