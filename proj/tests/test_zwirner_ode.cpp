#include <doctest.h>

#include <cmath>
#include <random>

#include "funsol/zwirner_ode.hpp"

using namespace funsol;

namespace {

ProblemData make_problem(double u1, double u2, double w1, double w2, CoefficientFn a,
                         CoefficientFn b) {
    ProblemData p;
    p.u1 = u1;
    p.u2 = u2;
    p.w1 = w1;
    p.w2 = w2;
    p.coeffs.a = std::move(a);
    p.coeffs.b = std::move(b);
    return p;
}

const CoefficientFn one = [](double, double) { return 1.0; };

// F = U: a = 1, b = u on [1, e] x [0, 1]; closed form U(w) = u1 * exp(gamma w).
ProblemData exponential_problem() {
    return make_problem(1.0, std::exp(1.0), 0.0, 1.0, one, [](double u, double) { return u; });
}

}  // namespace

TEST_CASE("shoot: constant F integrates exactly") {
    TwoPointProblem p{make_problem(0.0, 2.0, 0.0, 1.0, one, one), 64};
    const ShootResult r = shoot(p, 2.0);
    REQUIRE(r.u.size() == 65);
    for (std::size_t k = 0; k < r.u.size(); ++k) {
        const double w = static_cast<double>(k) / 64.0;
        CHECK(std::abs(r.u[k] - 2.0 * w) <= 1e-14);
    }
    CHECK(r.clamped_evals == 0);
}

TEST_CASE("shoot: F = U reproduces the exponential to RK4 accuracy") {
    TwoPointProblem p{exponential_problem(), 1024};
    const ShootResult r = shoot(p, 1.0);
    CHECK(std::abs(r.endpoint() - std::exp(1.0)) < 1e-11);
    // Interior nodes against the closed form.
    const std::size_t mid = 512;
    CHECK(std::abs(r.u[mid] - std::exp(0.5)) < 1e-11);
    CHECK(r.clamped_evals == 0);
}

TEST_CASE("shoot: RK4 is exact for F cubic in w (u-independent)") {
    // U' = w, U(0) = 0: RK4 reduces to a quadrature rule exact for cubics,
    // so the endpoint is 1/2 exactly.  b = w vanishes at w = 0; shoot must
    // tolerate the isolated zero.
    TwoPointProblem p{make_problem(0.0, 0.5, 0.0, 1.0, one, [](double, double w) { return w; }), 32};
    const ShootResult r = shoot(p, 1.0);
    CHECK(std::abs(r.endpoint() - 0.5) <= 1e-15);
}

TEST_CASE("shoot: RK4 convergence order >= 3.7 on the exponential case") {
    std::vector<double> errors;
    for (const int n : {64, 128, 256, 512}) {
        TwoPointProblem p{exponential_problem(), n};
        errors.push_back(std::abs(shoot(p, 1.0).endpoint() - std::exp(1.0)));
    }
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        const double order = std::log2(errors[k] / errors[k + 1]);
        CHECK(order >= 3.7);
        CHECK(order <= 4.3);
    }
}

TEST_CASE("shoot: runaway trajectory reports NonFiniteTrajectory") {
    // Clamped coefficient evaluation bounds F, so only an overflowing gamma
    // can push the state out of range.
    auto b = [](double u, double) { return 1.0 + u * u; };
    TwoPointProblem p{make_problem(0.0, 1.0, 0.0, 1.0, one, b), 256};
    CHECK_THROWS_AS(shoot(p, 1e308), NonFiniteTrajectory);
}

TEST_CASE("gamma_bracket: constant F gives the degenerate-width bracket") {
    TwoPointProblem p{make_problem(0.0, 2.0, 0.0, 1.0, one, one), 128};
    const HypothesisReport rep = validate_hypotheses(p.data, 9);
    const GammaBracket env = envelope_bracket(p, rep);
    CHECK(env.lo == doctest::Approx(2.0));
    CHECK(env.hi == doctest::Approx(2.0));
    const GammaBracket verified = gamma_bracket(p, rep);
    CHECK(verified.lo <= 2.0);
    CHECK(verified.hi >= 2.0);
}

TEST_CASE("gamma_bracket: exponential case brackets the true gamma = 1") {
    TwoPointProblem p{exponential_problem(), 256};
    const HypothesisReport rep = validate_hypotheses(p.data, 33);
    const GammaBracket env = envelope_bracket(p, rep);
    const double e = std::exp(1.0);
    // Closed form: p-hat = 1, q-hat = e on R = [1,e] x [0,1].
    CHECK(env.lo == doctest::Approx((e - 1.0) / e).epsilon(1e-12));
    CHECK(env.hi == doctest::Approx(e - 1.0).epsilon(1e-12));
    CHECK(env.lo <= 1.0);
    CHECK(env.hi >= 1.0);
}

TEST_CASE("gamma_bracket: equal endpoints short-circuit to [0,0]") {
    TwoPointProblem p{make_problem(1.0, 1.0, 0.0, 1.0, one, one), 64};
    const GammaBracket b = gamma_bracket(p);
    CHECK(b.lo == 0.0);
    CHECK(b.hi == 0.0);
}

TEST_CASE("gamma_bracket: sign-changing F is rejected as a hypothesis violation") {
    // F < 0 over part of R is caught by the positivity validation before any
    // bracketing is attempted.
    auto b = [](double u, double) { return u; };  // changes sign on [-1, 1]
    TwoPointProblem p{make_problem(-1.0, 1.0, 0.0, 1.0, one, b), 64};
    CHECK_THROWS_AS(gamma_bracket(p), NonPositiveCoefficient);

    // A non-positive sampled envelope (however it was obtained) fails fast.
    HypothesisReport doctored = validate_hypotheses(
        make_problem(0.0, 1.0, 0.0, 1.0, one, one), 5);
    doctored.ratio_min = -0.5;
    TwoPointProblem q{make_problem(0.0, 1.0, 0.0, 1.0, one, one), 64};
    CHECK_THROWS_AS(envelope_bracket(q, doctored), BracketingFailed);
}

TEST_CASE("solve_two_point: common coefficients give the affine profile") {
    // Any a = b has F = 1: gamma = (u2-u1)/(w2-w1) and U affine.
    auto common = [](double u, double w) { return 1.0 + u * u + w * w; };
    TwoPointProblem p{make_problem(0.0, 2.0, 0.0, 1.0, common, common), 512};
    const TwoPointSolution s = solve_two_point(p);
    const double alpha = 2.0, beta = 0.0;
    CHECK(s.gamma == doctest::Approx(alpha).epsilon(1e-12));
    for (std::size_t k = 0; k < s.w_nodes.size(); ++k)
        CHECK(std::abs(s.u_values[k] - (alpha * s.w_nodes[k] + beta)) < 1e-12);
    CHECK(s.clamp_warning == false);
}

TEST_CASE("solve_two_point: exponential case recovers gamma = 1 and U = e^w") {
    TwoPointProblem p{exponential_problem(), 1024};
    const TwoPointSolution s = solve_two_point(p);
    CHECK(std::abs(s.gamma - 1.0) < 1e-8);
    for (std::size_t k = 0; k < s.w_nodes.size(); k += 128)
        CHECK(std::abs(s.u_values[k] - std::exp(s.w_nodes[k])) < 1e-9);
    CHECK(std::abs(s.endpoint_residual) <= default_endpoint_tolerance(p));
    // Bracket containment.
    CHECK(s.gamma >= s.bracket.lo);
    CHECK(s.gamma <= s.bracket.hi);
    // The tabulated derivative satisfies a(U,w) U' = gamma b(U,w) at nodes.
    for (std::size_t k = 0; k < s.w_nodes.size(); k += 64)
        CHECK(std::abs(s.derivative_values[k] - s.gamma * s.u_values[k]) < 1e-12);
}

TEST_CASE("solve_two_point: u-independent F reduces to quadrature") {
    // a = 1, b = w + 1: gamma = (u2-u1) / int(w+1) = 3 / (3/2) = 2 and
    // U(w) = w^2 + 2w; RK4 and the root finder are exact here up to roundoff.
    auto b = [](double, double w) { return w + 1.0; };
    TwoPointProblem p{make_problem(0.0, 3.0, 0.0, 1.0, one, b), 256};
    const TwoPointSolution s = solve_two_point(p);
    CHECK(s.gamma == doctest::Approx(2.0).epsilon(1e-13));
    for (std::size_t k = 0; k < s.w_nodes.size(); k += 16) {
        const double w = s.w_nodes[k];
        CHECK(std::abs(s.u_values[k] - (w * w + 2.0 * w)) < 1e-12);
    }
}

TEST_CASE("solve_two_point: equal endpoints accept gamma = 0 without root finding") {
    TwoPointProblem p{make_problem(1.5, 1.5, 0.0, 2.0, one, one), 64};
    const TwoPointSolution s = solve_two_point(p);
    CHECK(s.gamma == 0.0);
    CHECK(s.root_iterations == 0);
    for (const double u : s.u_values) CHECK(u == 1.5);
    for (const double d : s.derivative_values) CHECK(d == 0.0);
}

TEST_CASE("solve_two_point: decreasing data gives negative gamma") {
    auto b = [](double u, double) { return u + 3.0; };  // positive on R = [-2, 0]
    TwoPointProblem p{make_problem(0.0, -2.0, 0.0, 1.0, one, b), 512};
    const TwoPointSolution s = solve_two_point(p);
    CHECK(s.gamma < 0.0);
    for (std::size_t k = 0; k + 1 < s.u_values.size(); ++k)
        CHECK(s.u_values[k + 1] < s.u_values[k]);  // strictly decreasing
}

TEST_CASE("shooting residual is monotone in gamma (random pairs)") {
    auto b = [](double u, double w) { return 1.0 + 0.5 * std::sin(u) + 0.25 * w; };
    TwoPointProblem p{make_problem(0.0, 1.0, 0.0, 1.0, one, b), 128};
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> dist(0.1, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        double g1 = dist(rng), g2 = dist(rng);
        if (g1 == g2) continue;
        if (g1 > g2) std::swap(g1, g2);
        CHECK(shoot(p, g1).endpoint() < shoot(p, g2).endpoint());
    }
}

TEST_CASE("multi-start brackets agree to 1e-10 relative") {
    TwoPointProblem p{exponential_problem(), 512};
    const double reference = solve_two_point(p).gamma;
    for (const GammaBracket start : {GammaBracket{0.2, 0.4}, GammaBracket{2.0, 4.0},
                                     GammaBracket{0.9, 1.1}, GammaBracket{0.05, 8.0},
                                     GammaBracket{1.4, 1.5}}) {
        const TwoPointSolution s = solve_two_point(p, 0.0, start);
        CHECK(std::abs(s.gamma - reference) <= 1e-10 * std::abs(reference));
    }
}

TEST_CASE("certify_uniqueness: constant and linear F certify; sqrt kink does not") {
    {
        TwoPointProblem p{make_problem(0.0, 1.0, 0.0, 1.0, one, one), 16};
        const auto rep = validate_hypotheses(p.data, 17);
        const auto cert = certify_uniqueness(p, rep);
        CHECK(cert.certified);
        CHECK(cert.lipschitz_constant == 0.0);
    }
    {
        TwoPointProblem p{exponential_problem(), 16};
        const auto rep = validate_hypotheses(p.data, 33);
        const auto cert = certify_uniqueness(p, rep);
        CHECK(cert.certified);
        CHECK(cert.lipschitz_constant == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(cert.source == UniquenessCertificate::Source::sampled);
    }
    {
        // F = sqrt(|u - 1/2|) + 0.1: positive but not Lipschitz at u = 1/2.
        auto b = [](double u, double) { return std::sqrt(std::abs(u - 0.5)) + 0.1; };
        TwoPointProblem p{make_problem(0.0, 1.0, 0.0, 1.0, one, b), 16};
        const auto rep = validate_hypotheses(p.data, 33);
        const auto cert = certify_uniqueness(p, rep);
        CHECK_FALSE(cert.certified);
    }
    {
        // A user hint always wins.
        auto b = [](double u, double) { return std::sqrt(std::abs(u - 0.5)) + 0.1; };
        ProblemData d = make_problem(0.0, 1.0, 0.0, 1.0, one, b);
        d.coeffs.lipschitz_constant_hint = 7.0;
        TwoPointProblem p{d, 16};
        const auto cert = certify_uniqueness(p, validate_hypotheses(p.data, 33));
        CHECK(cert.certified);
        CHECK(cert.lipschitz_constant == 7.0);
        CHECK(cert.source == UniquenessCertificate::Source::user_hint);
    }
}

TEST_CASE("clamped evaluations are counted for excursions outside R") {
    // gamma far above the true value drives U beyond u2 during shooting.
    TwoPointProblem p{exponential_problem(), 128};
    const ShootResult r = shoot(p, 3.0);
    CHECK(r.clamped_evals > 0);
}
