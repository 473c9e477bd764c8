#include "funsol/zwirner_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace funsol {

namespace {

constexpr int kDefaultEnvelopeSamples = 33;
constexpr int kMaxRootIterations = 200;
constexpr int kMaxBracketDoublings = 60;

/// F = b/a with the u argument clamped to the inflated rectangle.  If the
/// margin evaluation misbehaves (coefficients are only guaranteed on R
/// itself), the evaluation falls back to R proper; a value that is still
/// non-finite propagates into the state and trips NonFiniteTrajectory.
struct ClampedRatio {
    const ProblemData& data;
    double u_lo, u_hi;      // inflated corridor
    double r_lo, r_hi;      // rectangle proper
    long clamps = 0;

    double operator()(double u, double w) {
        const double uc = std::clamp(u, u_lo, u_hi);
        bool clamped = uc != u;
        double value = data.coeffs.ratio(uc, w);
        if (!std::isfinite(value)) {
            const double ur = std::clamp(u, r_lo, r_hi);
            if (ur != uc) {
                value = data.coeffs.ratio(ur, w);
                clamped = true;
            }
        }
        if (clamped) ++clamps;
        return value;
    }
};

ClampedRatio make_clamped_ratio(const ProblemData& data) {
    const Rectangle r = data.rect();
    const double margin = 0.05 * r.u_span();
    return ClampedRatio{data, r.u_lo - margin, r.u_hi + margin, r.u_lo, r.u_hi};
}

struct BracketEvals {
    GammaBracket bracket;
    double g_lo = 0.0;
    double g_hi = 0.0;
};

}  // namespace

void TwoPointProblem::validate() const {
    data.validate();
    if (!(data.w2 > data.w1))
        throw InvalidProblem("the two-point problem requires w2 > w1 strictly");
    if (n_ode < 1) throw InvalidProblem("n_ode must be positive");
}

double default_endpoint_tolerance(const TwoPointProblem& p) {
    return 1e-12 * std::max(1.0, std::abs(p.data.u2 - p.data.u1));
}

ShootResult shoot(const TwoPointProblem& p, double gamma) {
    p.validate();
    const ProblemData& d = p.data;
    const int n = p.n_ode;
    const double h = (d.w2 - d.w1) / n;

    ClampedRatio f = make_clamped_ratio(d);

    ShootResult out;
    out.u.resize(static_cast<std::size_t>(n) + 1);
    out.u[0] = d.u1;

    double u = d.u1;
    for (int k = 0; k < n; ++k) {
        const double w = d.w1 + k * h;
        const double k1 = gamma * f(u, w);
        const double k2 = gamma * f(u + 0.5 * h * k1, w + 0.5 * h);
        const double k3 = gamma * f(u + 0.5 * h * k2, w + 0.5 * h);
        const double k4 = gamma * f(u + h * k3, w + h);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(u))
            throw NonFiniteTrajectory("trajectory became non-finite at step " + std::to_string(k + 1) +
                                      " (gamma = " + std::to_string(gamma) + ")");
        out.u[static_cast<std::size_t>(k) + 1] = u;
    }
    out.clamped_evals = f.clamps;
    return out;
}

GammaBracket envelope_bracket(const TwoPointProblem& p, const HypothesisReport& report) {
    const ProblemData& d = p.data;
    const double du = d.u2 - d.u1;
    if (du == 0.0) return GammaBracket{0.0, 0.0};
    if (!(report.ratio_min > 0.0))
        throw BracketingFailed("sampled envelope min(F) = " + std::to_string(report.ratio_min) +
                               " is not positive; F > 0 on R is required");
    const double dw = d.w2 - d.w1;
    double lo = du / (report.ratio_max * dw);
    double hi = du / (report.ratio_min * dw);
    if (lo > hi) std::swap(lo, hi);  // u2 < u1 flips the signs
    return GammaBracket{lo, hi};
}

namespace {

double endpoint_residual_at(const TwoPointProblem& p, double gamma, ShootResult* traj = nullptr) {
    ShootResult r = shoot(p, gamma);
    const double g = r.endpoint() - p.data.u2;
    if (traj) *traj = std::move(r);
    return g;
}

/// Checks that the residual straddles zero at the bracket ends; otherwise
/// expands in the direction indicated by the residual sign (G is increasing
/// in gamma when F > 0).
BracketEvals verify_and_expand(const TwoPointProblem& p, GammaBracket b) {
    if (b.lo > b.hi) std::swap(b.lo, b.hi);

    BracketEvals out;
    out.bracket = b;
    out.g_lo = endpoint_residual_at(p, b.lo);
    out.g_hi = endpoint_residual_at(p, b.hi);

    double step = std::max(b.hi - b.lo, 1e-6 * std::max(1.0, std::max(std::abs(b.lo), std::abs(b.hi))));
    for (int k = 0; k < kMaxBracketDoublings; ++k) {
        if (out.g_lo == 0.0 || out.g_hi == 0.0 || (out.g_lo < 0.0) != (out.g_hi < 0.0))
            return out;
        if (out.g_lo > 0.0) {
            // both positive: the root lies below lo
            out.bracket.hi = out.bracket.lo;
            out.g_hi = out.g_lo;
            out.bracket.lo -= step;
            out.g_lo = endpoint_residual_at(p, out.bracket.lo);
        } else {
            // both negative: the root lies above hi
            out.bracket.lo = out.bracket.hi;
            out.g_lo = out.g_hi;
            out.bracket.hi += step;
            out.g_hi = endpoint_residual_at(p, out.bracket.hi);
        }
        step *= 2.0;
    }
    if (out.g_lo == 0.0 || out.g_hi == 0.0 || (out.g_lo < 0.0) != (out.g_hi < 0.0)) return out;
    throw BracketingFailed("no sign change of the endpoint residual after " +
                           std::to_string(kMaxBracketDoublings) +
                           " doublings; the envelope hypotheses are likely violated (does F change sign?)");
}

TwoPointSolution constant_solution(const TwoPointProblem& p) {
    // u2 == u1: gamma = 0 and U constant satisfy the problem exactly; any
    // other gamma would break monotonicity of the trajectory.
    const int n = p.n_ode;
    TwoPointSolution s;
    s.gamma = 0.0;
    s.w_nodes.resize(static_cast<std::size_t>(n) + 1);
    s.u_values.assign(static_cast<std::size_t>(n) + 1, p.data.u1);
    s.derivative_values.assign(static_cast<std::size_t>(n) + 1, 0.0);
    const double h = (p.data.w2 - p.data.w1) / n;
    for (int k = 0; k <= n; ++k) s.w_nodes[k] = p.data.w1 + k * h;
    s.w_nodes.back() = p.data.w2;
    return s;
}

TwoPointSolution finish_solution(const TwoPointProblem& p, double gamma, ShootResult traj,
                                 double residual, const GammaBracket& bracket, int iterations) {
    const int n = p.n_ode;
    TwoPointSolution s;
    s.gamma = gamma;
    s.w_nodes.resize(static_cast<std::size_t>(n) + 1);
    const double h = (p.data.w2 - p.data.w1) / n;
    for (int k = 0; k <= n; ++k) s.w_nodes[k] = p.data.w1 + k * h;
    s.w_nodes.back() = p.data.w2;
    s.u_values = std::move(traj.u);

    ClampedRatio f = make_clamped_ratio(p.data);
    s.derivative_values.resize(s.u_values.size());
    for (std::size_t k = 0; k < s.u_values.size(); ++k)
        s.derivative_values[k] = gamma * f(s.u_values[k], s.w_nodes[k]);

    s.clamped_evals = traj.clamped_evals + f.clamps;
    s.clamp_warning = s.clamped_evals > 0;
    s.endpoint_residual = residual;
    s.bracket = bracket;
    s.root_iterations = iterations;
    return s;
}

}  // namespace

GammaBracket gamma_bracket(const TwoPointProblem& p, const HypothesisReport& report) {
    p.validate();
    GammaBracket env = envelope_bracket(p, report);
    if (env.lo == 0.0 && env.hi == 0.0) return env;  // u2 == u1, gamma = 0 exactly
    return verify_and_expand(p, env).bracket;
}

GammaBracket gamma_bracket(const TwoPointProblem& p) {
    return gamma_bracket(p, validate_hypotheses(p.data, kDefaultEnvelopeSamples));
}

TwoPointSolution solve_two_point(const TwoPointProblem& p, double tol_endpoint) {
    p.validate();
    const HypothesisReport report = validate_hypotheses(p.data, kDefaultEnvelopeSamples);
    return solve_two_point(p, tol_endpoint, envelope_bracket(p, report));
}

TwoPointSolution solve_two_point(const TwoPointProblem& p, double tol_endpoint,
                                 const GammaBracket& initial) {
    p.validate();
    const double tol = tol_endpoint > 0.0 ? tol_endpoint : default_endpoint_tolerance(p);

    if (p.data.u2 == p.data.u1) return constant_solution(p);

    BracketEvals ev = verify_and_expand(p, initial);
    double lo = ev.bracket.lo, g_lo = ev.g_lo;
    double hi = ev.bracket.hi, g_hi = ev.g_hi;

    // Bisection-safeguarded secant on G(gamma).  The secant step is taken
    // whenever it lands strictly inside the bracket, otherwise bisect.
    double x_prev = lo, g_prev = g_lo;
    double x_last = hi, g_last = g_hi;

    if (std::abs(g_lo) <= tol) {
        ShootResult traj;
        const double g = endpoint_residual_at(p, lo, &traj);
        return finish_solution(p, lo, std::move(traj), g, ev.bracket, 0);
    }
    if (std::abs(g_hi) <= tol) {
        ShootResult traj;
        const double g = endpoint_residual_at(p, hi, &traj);
        return finish_solution(p, hi, std::move(traj), g, ev.bracket, 0);
    }

    for (int iter = 1; iter <= kMaxRootIterations; ++iter) {
        double candidate = std::numeric_limits<double>::quiet_NaN();
        const double denom = g_last - g_prev;
        if (denom != 0.0) candidate = x_last - g_last * (x_last - x_prev) / denom;
        if (!std::isfinite(candidate) || !(candidate > lo) || !(candidate < hi))
            candidate = 0.5 * (lo + hi);

        ShootResult traj;
        const double g = endpoint_residual_at(p, candidate, &traj);
        if (std::abs(g) <= tol)
            return finish_solution(p, candidate, std::move(traj), g, ev.bracket, iter);

        if ((g < 0.0) == (g_lo < 0.0)) {
            lo = candidate;
            g_lo = g;
        } else {
            hi = candidate;
            g_hi = g;
        }
        x_prev = x_last;
        g_prev = g_last;
        x_last = candidate;
        g_last = g;
    }
    throw MaxIterationsExceeded("root finder exceeded " + std::to_string(kMaxRootIterations) +
                                " iterations; the endpoint tolerance " + std::to_string(tol) +
                                " may be unreachable at n_ode = " + std::to_string(p.n_ode));
}

UniquenessCertificate certify_uniqueness(const TwoPointProblem& p, const HypothesisReport& report) {
    UniquenessCertificate cert;
    if (p.data.coeffs.lipschitz_constant_hint) {
        cert.certified = true;
        cert.lipschitz_constant = *p.data.coeffs.lipschitz_constant_hint;
        cert.source = UniquenessCertificate::Source::user_hint;
        return cert;
    }

    const double base = report.lipschitz_estimate;
    const double refined = report.lipschitz_estimate_refined;
    const double tiny = 1e-12 * std::max(1.0, std::abs(report.ratio_max));

    if (refined <= tiny) {
        cert.certified = true;
        cert.lipschitz_constant = 0.0;
        cert.source = UniquenessCertificate::Source::sampled;
        return cert;
    }
    // A Lipschitz F has difference quotients that stabilize under lattice
    // refinement; sustained growth marks an unbounded derivative.
    if (base <= tiny || refined > 1.25 * base) {
        cert.certified = false;
        cert.source = UniquenessCertificate::Source::none;
        return cert;
    }
    cert.certified = true;
    cert.lipschitz_constant = refined;
    cert.source = UniquenessCertificate::Source::sampled;
    return cert;
}

}  // namespace funsol
