#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ddh {

namespace detail {
inline std::string sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}
}  // namespace detail

/// Base class of every exception thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rejected input: bad mesh parameters, out-of-domain points, dimension
/// mismatches, malformed configuration.  CLI exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

/// Numerical failure inside a computation.  CLI exit code 3.
struct NumericalError : Error {
    using Error::Error;
};

/// Filesystem failure.  CLI exit code 4.
struct IoError : Error {
    using Error::Error;
};

/// lambda too close to the segment [-1, 1] for a stable solve.
struct UnstableParameterError : ValidationError {
    explicit UnstableParameterError(double distance_)
        : ValidationError("unstable spectral parameter: dist(lambda, [-1,1]) = " +
                          detail::sci(distance_) + " is below 1e-12"),
          distance(distance_) {}
    double distance;
};

/// Pivot collapsed in the dense factorization.
struct SingularMatrixError : NumericalError {
    explicit SingularMatrixError(double pivot_)
        : NumericalError("numerically singular system: pivot magnitude " + detail::sci(pivot_)),
          pivot(pivot_) {}
    double pivot;
};

/// Evaluation point too close to a grid node (the reconstruction has a
/// simple pole there).
struct PoleProximityError : ValidationError {
    using ValidationError::ValidationError;
};

/// A mathematical identity the implementation relies on was violated.
struct InternalConsistencyError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace ddh
