#include "funsol/pipeline.hpp"

namespace funsol {

namespace {

constexpr int kHypothesisSamples = 33;

}  // namespace

PipelineResult run_functional_pipeline(const ProblemData& p, const TaggedGrid& grid, int n_ode,
                                       const Tolerances& tol) {
    p.validate();
    HypothesisReport report = validate_hypotheses(p, kHypothesisSamples);

    const MixedLaplaceSystem geometric = assemble(grid);
    ScalarField z = solve_z(geometric, tol.linear);

    if (p.degenerate()) {
        FunctionalSolution fields = reconstruct_degenerate(p, n_ode, z);
        PdeResidual residual = pde_residual(fields, p.coeffs);
        // The uncoupled problem is unique outright: its single transform is
        // strictly increasing, no Lipschitz condition enters.
        UniquenessCertificate cert;
        cert.certified = true;
        cert.lipschitz_constant = 0.0;
        cert.source = UniquenessCertificate::Source::sampled;
        return PipelineResult{std::move(report), cert,          GammaBracket{0.0, 0.0},
                              std::nullopt,      std::nullopt,  0.0,
                              std::move(fields), DiagnosticReport{}, residual};
    }

    TwoPointProblem two_point{p, n_ode};
    const UniquenessCertificate cert = certify_uniqueness(two_point, report);
    TwoPointSolution sol = solve_two_point(two_point, tol.endpoint, envelope_bracket(two_point, report));

    MonotoneTransform psi = build_psi(sol, p.coeffs);
    MonotoneTransform theta = build_theta(sol, p.coeffs);
    const double gamma_t = gamma_ratio(theta, psi, sol.gamma);

    FunctionalSolution fields = reconstruct(sol, psi, z);
    DiagnosticReport diagnostics = verify_theta_psi_proportionality(fields, theta, psi);
    PdeResidual residual = pde_residual(fields, p.coeffs);

    const GammaBracket bracket = sol.bracket;
    return PipelineResult{std::move(report),  cert,        bracket,
                          std::move(theta),   std::move(psi), gamma_t,
                          std::move(fields),  diagnostics, residual};
}

}  // namespace funsol
