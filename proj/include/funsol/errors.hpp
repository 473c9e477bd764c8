#pragma once

#include <stdexcept>
#include <string>

namespace funsol {

/// Base class for all solver errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A coefficient sample a(u,w) or b(u,w) was non-positive (or non-finite).
class NonPositiveCoefficient : public Error {
public:
    NonPositiveCoefficient(double u, double w, char which, double value)
        : Error("coefficient '" + std::string(1, which) + "' is " + std::to_string(value) +
                " at (u=" + std::to_string(u) + ", w=" + std::to_string(w) + "); must be > 0"),
          u(u), w(w), which(which), value(value) {}

    double u, w;
    char which;  // 'a' or 'b'
    double value;
};

/// Grid construction rejected the requested geometry or tag layout.
class InvalidGeometry : public Error {
public:
    using Error::Error;
};

/// Boundary data violates the standing assumptions (e.g. w2 < w1).
class InvalidProblem : public Error {
public:
    using Error::Error;
};

/// The shooting trajectory left the representable range.
class NonFiniteTrajectory : public Error {
public:
    using Error::Error;
};

/// No sign change of the shooting residual could be bracketed.
class BracketingFailed : public Error {
public:
    using Error::Error;
};

/// Root finding did not reach the endpoint tolerance within its iteration budget.
class MaxIterationsExceeded : public Error {
public:
    using Error::Error;
};

/// The conjugate-gradient solve exhausted its iteration cap.
class SolverStagnation : public Error {
public:
    using Error::Error;
};

/// A tabulated integrand that must be positive was not.
class NonPositiveIntegrand : public Error {
public:
    using Error::Error;
};

/// Inversion was requested on a transform that is not strictly monotone.
class NotInvertible : public Error {
public:
    using Error::Error;
};

/// A query value lies outside the tabulated range beyond the permitted slack.
class OutOfRange : public Error {
public:
    using Error::Error;
};

/// Two routes to the same quantity disagree beyond combined tolerance.
class ConsistencyViolation : public Error {
public:
    using Error::Error;
};

/// The fixed-point iteration did not converge within max_iter sweeps.
class NoConvergence : public Error {
public:
    NoConvergence(int iterations, double last_update_norm)
        : Error("no convergence after " + std::to_string(iterations) +
                " iterations (last update " + std::to_string(last_update_norm) + ")"),
          iterations(iterations), last_update_norm(last_update_norm) {}

    int iterations;
    double last_update_norm;
};

/// Fields defined on different grids were compared.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// Configuration file could not be parsed or is semantically invalid.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace funsol
