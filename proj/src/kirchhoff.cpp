#include "funsol/kirchhoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace funsol {

namespace {

constexpr double kRangeSlack = 1e-12;

int detect_direction(const std::vector<double>& values) {
    bool increasing = true, decreasing = true;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (!(values[k + 1] > values[k])) increasing = false;
        if (!(values[k + 1] < values[k])) decreasing = false;
    }
    if (increasing) return 1;
    if (decreasing) return -1;
    return 0;
}

MonotoneTransform accumulate_trapezoid(MonotoneTransform::Kind kind,
                                       const std::vector<double>& nodes,
                                       const std::vector<double>& integrand) {
    MonotoneTransform t;
    t.kind = kind;
    t.nodes = nodes;
    t.values.resize(nodes.size());
    t.values[0] = 0.0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const double h = nodes[k + 1] - nodes[k];
        t.values[k + 1] = t.values[k] + 0.5 * h * (integrand[k] + integrand[k + 1]);
    }
    t.direction = detect_direction(t.values);
    return t;
}

}  // namespace

double MonotoneTransform::operator()(double x) const {
    const double lo = nodes.front(), hi = nodes.back();
    if (x < lo - kRangeSlack || x > hi + kRangeSlack)
        throw OutOfRange("transform argument " + std::to_string(x) + " outside [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
    x = std::clamp(x, lo, hi);
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t k = (it == nodes.begin()) ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
    if (k + 1 >= nodes.size()) k = nodes.size() - 2;
    if (x == nodes[k]) return values[k];
    const double s = (x - nodes[k]) / (nodes[k + 1] - nodes[k]);
    return values[k] + s * (values[k + 1] - values[k]);
}

MonotoneTransform build_psi(const TwoPointSolution& sol, const CoefficientPair& coeffs) {
    std::vector<double> integrand(sol.w_nodes.size());
    for (std::size_t k = 0; k < sol.w_nodes.size(); ++k) {
        const double bv = coeffs.b(sol.u_values[k], sol.w_nodes[k]);
        // An isolated zero of b at a node still yields strictly positive
        // trapezoid increments; only b < 0 (or two adjacent zeros, caught by
        // the monotonicity check below) breaks invertibility.
        if (!std::isfinite(bv) || bv < 0.0)
            throw NonPositiveIntegrand("b(U(w), w) = " + std::to_string(bv) + " at w = " +
                                       std::to_string(sol.w_nodes[k]) + "; psi requires b >= 0");
        integrand[k] = bv;
    }
    MonotoneTransform psi =
        accumulate_trapezoid(MonotoneTransform::Kind::psi, sol.w_nodes, integrand);
    if (psi.direction != 1)
        throw NonPositiveIntegrand("psi is not strictly increasing; b vanishes on a whole interval");
    return psi;
}

MonotoneTransform build_theta(const TwoPointSolution& sol, const CoefficientPair& coeffs) {
    std::vector<double> integrand(sol.w_nodes.size());
    for (std::size_t k = 0; k < sol.w_nodes.size(); ++k) {
        const double av = coeffs.a(sol.u_values[k], sol.w_nodes[k]);
        if (!std::isfinite(av))
            throw Error("a(U(w), w) is not finite at w = " + std::to_string(sol.w_nodes[k]));
        integrand[k] = av * sol.derivative_values[k];
    }
    return accumulate_trapezoid(MonotoneTransform::Kind::theta, sol.w_nodes, integrand);
}

double gamma_ratio(const MonotoneTransform& theta, const MonotoneTransform& psi,
                   std::optional<double> shooting_gamma) {
    const double psi_end = psi.back_value();
    if (!(psi_end > 0.0))
        throw NonPositiveIntegrand("psi(w2) = " + std::to_string(psi_end) + " must be positive");
    const double gamma = theta.back_value() / psi_end;
    if (shooting_gamma) {
        const double scale = std::max({std::abs(gamma), std::abs(*shooting_gamma), 1e-300});
        if (std::abs(gamma - *shooting_gamma) > 1e-6 * scale)
            throw ConsistencyViolation("transform-ratio gamma " + std::to_string(gamma) +
                                       " disagrees with shooting gamma " +
                                       std::to_string(*shooting_gamma) +
                                       " beyond 1e-6 relative; quadrature/integrator defect");
    }
    return gamma;
}

double invert(const MonotoneTransform& t, double value) {
    if (t.direction == 0)
        throw NotInvertible("transform is not strictly monotone (gamma = 0 makes theta constant)");

    const double v_lo = std::min(t.front_value(), t.back_value());
    const double v_hi = std::max(t.front_value(), t.back_value());
    if (value < v_lo - kRangeSlack || value > v_hi + kRangeSlack)
        throw OutOfRange("value " + std::to_string(value) + " outside transform range [" +
                         std::to_string(v_lo) + ", " + std::to_string(v_hi) + "]");
    value = std::clamp(value, v_lo, v_hi);

    // Binary search for the bracketing interval, then linear interpolation.
    std::size_t lo = 0, hi = t.values.size() - 1;
    if (t.direction > 0) {
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (t.values[mid] <= value) lo = mid;
            else hi = mid;
        }
    } else {
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (t.values[mid] >= value) lo = mid;
            else hi = mid;
        }
    }
    if (value == t.values[lo]) return t.nodes[lo];
    if (value == t.values[hi]) return t.nodes[hi];
    const double s = (value - t.values[lo]) / (t.values[hi] - t.values[lo]);
    return t.nodes[lo] + s * (t.nodes[hi] - t.nodes[lo]);
}

}  // namespace funsol
