#pragma once

#include <vector>

#include "funsol/core_types.hpp"

namespace funsol {

/// The two-point problem U'(w) = gamma * F(U(w), w), U(w1) = u1, U(w2) = u2,
/// in the unknown pair (gamma, U), discretized on n_ode uniform w-intervals.
struct TwoPointProblem {
    ProblemData data;
    int n_ode = 1024;

    void validate() const;
};

struct GammaBracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// One initial-value integration: the tabulated trajectory plus the number of
/// coefficient evaluations where U had to be clamped to the inflated rectangle.
struct ShootResult {
    std::vector<double> u;  // n_ode + 1 values, u[0] = u1
    long clamped_evals = 0;

    double endpoint() const { return u.back(); }
};

/// Solution of the two-point problem: the parameter gamma and the trajectory
/// with its tabulated derivative U' = gamma * F(U, w).
struct TwoPointSolution {
    double gamma = 0.0;
    std::vector<double> w_nodes;
    std::vector<double> u_values;
    std::vector<double> derivative_values;

    long clamped_evals = 0;      // clamps on the accepted trajectory
    bool clamp_warning = false;  // accepted trajectory left the data rectangle
    double endpoint_residual = 0.0;
    GammaBracket bracket;        // verified bracket the root finder worked in
    int root_iterations = 0;
};

/// Default endpoint tolerance: 1e-12 * max(1, |u2 - u1|).
double default_endpoint_tolerance(const TwoPointProblem& p);

/// Integrates U' = gamma F(U, w), U(w1) = u1 by classical fixed-step RK4.
/// F is evaluated with U clamped to R inflated by 5% of the u-extent of R.
ShootResult shoot(const TwoPointProblem& p, double gamma);

/// The interval for gamma implied by the constant sampled envelopes
/// p-hat <= F <= q-hat (sign-adjusted for u2 < u1), before verification.
GammaBracket envelope_bracket(const TwoPointProblem& p, const HypothesisReport& report);

/// Envelope bracket verified against the shooting residual and expanded
/// geometrically (factor 2, at most 60 doublings) until it straddles zero.
/// Throws BracketingFailed when the budget is exhausted.
GammaBracket gamma_bracket(const TwoPointProblem& p, const HypothesisReport& report);
GammaBracket gamma_bracket(const TwoPointProblem& p);

/// Shooting solve: bisection-safeguarded secant on the endpoint residual
/// G(gamma) = shoot(p, gamma).endpoint - u2, which is strictly increasing in
/// gamma for F > 0.  tol_endpoint <= 0 selects the default tolerance.
TwoPointSolution solve_two_point(const TwoPointProblem& p, double tol_endpoint = 0.0);

/// Same, starting from a caller-supplied bracket (verified and expanded the
/// same way as gamma_bracket's result before use).
TwoPointSolution solve_two_point(const TwoPointProblem& p, double tol_endpoint,
                                 const GammaBracket& initial);

// ---------------------------------------------------------------------------
// Uniqueness
// ---------------------------------------------------------------------------

struct UniquenessCertificate {
    enum class Source { none, user_hint, sampled };

    bool certified = false;
    double lipschitz_constant = 0.0;  // meaningful only when certified
    Source source = Source::none;
};

/// Certifies uniqueness of the two-point solution when a finite Lipschitz
/// constant of F in u is available: the user hint takes precedence; otherwise
/// the sampled estimate is accepted unless it keeps growing under lattice
/// refinement (non-Lipschitz behaviour).  Never blocks solving.
UniquenessCertificate certify_uniqueness(const TwoPointProblem& p, const HypothesisReport& report);

}  // namespace funsol
