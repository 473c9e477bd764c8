#pragma once

#include <optional>
#include <vector>

#include "funsol/core_types.hpp"
#include "funsol/zwirner_ode.hpp"

namespace funsol {

/// A tabulated cumulative integral on a strictly increasing node grid,
/// invertible by binary search + linear interpolation when strictly monotone.
/// Immutable after construction.
struct MonotoneTransform {
    enum class Kind { theta, psi };

    Kind kind = Kind::psi;
    std::vector<double> nodes;   // strictly increasing
    std::vector<double> values;  // values[0] == 0 for theta/psi built here
    int direction = 0;           // +1 strictly increasing, -1 strictly decreasing, 0 neither

    double front_value() const { return values.front(); }
    double back_value() const { return values.back(); }

    /// Piecewise-linear forward evaluation; x outside the node range beyond
    /// 1e-12 absolute slack throws OutOfRange.
    double operator()(double x) const;
};

/// psi(w) = integral of b(U(t), t) from w1 to w, by composite trapezoid on
/// the trajectory grid.  Strictly increasing since b > 0.
MonotoneTransform build_psi(const TwoPointSolution& sol, const CoefficientPair& coeffs);

/// theta(w) = integral of a(U(t), t) U'(t) from w1 to w; monotone with the
/// sign of gamma (identically zero when gamma = 0).
MonotoneTransform build_theta(const TwoPointSolution& sol, const CoefficientPair& coeffs);

/// gamma = theta(w2) / psi(w2).  When the shooting value is supplied the two
/// routes are cross-checked to 1e-6 relative; disagreement means an
/// integrator or quadrature defect and throws ConsistencyViolation.
double gamma_ratio(const MonotoneTransform& theta, const MonotoneTransform& psi,
                   std::optional<double> shooting_gamma = std::nullopt);

/// Inverse lookup: the w with t(w) = value.  Values within 1e-12 absolute
/// slack of the range are clamped; beyond throws OutOfRange; a transform that
/// is not strictly monotone throws NotInvertible.  Exact at table nodes.
double invert(const MonotoneTransform& t, double value);

}  // namespace funsol
