#include "funsol/oracle_direct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "funsol/laplace_mixed.hpp"

namespace funsol {

namespace {

ScalarField solve_frozen(const TaggedGrid& grid, const ScalarField& alpha, double alpha_g1,
                         double alpha_g2, double g1, double g2, double tol_linear) {
    const MixedLaplaceSystem sys = assemble_weighted(grid, alpha, alpha_g1, alpha_g2, g1, g2);
    return solve_z(sys, tol_linear);
}

}  // namespace

PicardState picard_solve(const ProblemData& p, const TaggedGrid& grid, const PicardOptions& opts) {
    p.validate();
    if (!(opts.tol > 0.0)) throw InvalidProblem("picard tolerance must be positive");
    if (opts.max_iter < 1) throw InvalidProblem("max_iter must be positive");
    if (!(opts.damping > 0.0) || opts.damping > 1.0)
        throw InvalidProblem("damping must lie in (0, 1]");

    const int n = grid.n_unknowns();

    auto coeff_field = [&](const CoefficientFn& c, char which, const ScalarField& u,
                           const ScalarField& w) {
        ScalarField alpha(grid);
        for (int k = 0; k < n; ++k) {
            const double v = c(u[k], w[k]);
            if (!std::isfinite(v) || v <= 0.0)
                throw NonPositiveCoefficient(u[k], w[k], which, v);
            alpha[k] = v;
        }
        return alpha;
    };

    // Initial guess: both equations with coefficients frozen at (u1, w1);
    // the constant coefficient cancels, so these are harmonic interpolants.
    ScalarField ones(grid, 1.0);
    ScalarField u = solve_frozen(grid, ones, 1.0, 1.0, p.u1, p.u2, opts.tol_linear);
    ScalarField w = p.degenerate() ? ScalarField(grid, p.w1)
                                   : solve_frozen(grid, ones, 1.0, 1.0, p.w1, p.w2, opts.tol_linear);

    PicardState state{std::move(u), std::move(w), 0, 0.0};

    for (int it = 1; it <= opts.max_iter; ++it) {
        const ScalarField a_k = coeff_field(p.coeffs.a, 'a', state.u, state.w);
        ScalarField u_next = solve_frozen(grid, a_k, p.coeffs.a(p.u1, p.w1), p.coeffs.a(p.u2, p.w2),
                                          p.u1, p.u2, opts.tol_linear);
        ScalarField w_next = state.w;
        if (!p.degenerate()) {
            const ScalarField b_k = coeff_field(p.coeffs.b, 'b', state.u, state.w);
            w_next = solve_frozen(grid, b_k, p.coeffs.b(p.u1, p.w1), p.coeffs.b(p.u2, p.w2),
                                  p.w1, p.w2, opts.tol_linear);
        }

        double update = 0.0;
        for (int k = 0; k < n; ++k) {
            const double du = opts.damping * (u_next[k] - state.u[k]);
            const double dw = opts.damping * (w_next[k] - state.w[k]);
            state.u[k] += du;
            state.w[k] += dw;
            update = std::max(update, std::max(std::abs(du), std::abs(dw)));
        }
        state.iteration = it;
        state.last_update_norm = update;
        if (update <= opts.tol) return state;
    }
    throw NoConvergence(state.iteration, state.last_update_norm);
}

ComparisonReport compare(const FunctionalSolution& fsol, const PicardState& direct) {
    const TaggedGrid& g1 = fsol.u.grid();
    const TaggedGrid& g2 = direct.u.grid();
    if (&g1 != &g2 && (g1.nx() != g2.nx() || g1.ny() != g2.ny() || g1.hx() != g2.hx() ||
                       g1.hy() != g2.hy() || g1.n_unknowns() != g2.n_unknowns()))
        throw GridMismatch("comparison requires fields on the same grid");

    ComparisonReport rep;
    const int n = g1.n_unknowns();
    std::vector<double> du(static_cast<std::size_t>(n)), dw(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        du[k] = fsol.u[k] - direct.u[k];
        dw[k] = fsol.w[k] - direct.w[k];
        rep.max_diff_u = std::max(rep.max_diff_u, std::abs(du[k]));
        rep.max_diff_w = std::max(rep.max_diff_w, std::abs(dw[k]));
    }

    // Discrete gradient energy over interior faces.
    const double area = g1.hx() * g1.hy();
    for (int r = 0; r < n; ++r) {
        const int cell = g1.cells()[r];
        const int i = cell % g1.nx(), j = cell / g1.nx();
        if (g1.is_inside(i + 1, j)) {
            const int rn = g1.unknown_of(i + 1, j);
            rep.energy_u += area * (du[rn] - du[r]) * (du[rn] - du[r]) / (g1.hx() * g1.hx());
            rep.energy_w += area * (dw[rn] - dw[r]) * (dw[rn] - dw[r]) / (g1.hx() * g1.hx());
        }
        if (g1.is_inside(i, j + 1)) {
            const int rn = g1.unknown_of(i, j + 1);
            rep.energy_u += area * (du[rn] - du[r]) * (du[rn] - du[r]) / (g1.hy() * g1.hy());
            rep.energy_w += area * (dw[rn] - dw[r]) * (dw[rn] - dw[r]) / (g1.hy() * g1.hy());
        }
    }
    return rep;
}

}  // namespace funsol
