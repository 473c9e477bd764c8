#include "funsol/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace funsol {

namespace {

constexpr double kZSlack = 1e-12;

double clamp_z(double zv) {
    if (zv < -kZSlack || zv > 1.0 + kZSlack)
        throw OutOfRange("z value " + std::to_string(zv) +
                         " violates the [0,1] maximum principle beyond slack");
    return std::clamp(zv, 0.0, 1.0);
}

}  // namespace

double evaluate_profile(const TwoPointSolution& sol, double w) {
    const double w1 = sol.w_nodes.front(), w2 = sol.w_nodes.back();
    const std::size_t n = sol.w_nodes.size() - 1;
    const double pos = (w - w1) / (w2 - w1) * static_cast<double>(n);
    if (pos <= 0.0) return sol.u_values.front();
    if (pos >= static_cast<double>(n)) return sol.u_values.back();
    const std::size_t k = static_cast<std::size_t>(pos);
    const double s = pos - static_cast<double>(k);
    return sol.u_values[k] + s * (sol.u_values[k + 1] - sol.u_values[k]);
}

FunctionalSolution reconstruct(const TwoPointSolution& sol, const MonotoneTransform& psi,
                               const ScalarField& z) {
    if (psi.direction <= 0) throw NotInvertible("psi must be strictly increasing");
    const double psi_w2 = psi.back_value();
    const TaggedGrid& grid = z.grid();

    ScalarField w(grid), u(grid);
    for (int k = 0; k < z.size(); ++k) {
        const double zv = clamp_z(z[k]);
        const double wv = invert(psi, psi_w2 * zv);
        w[k] = wv;
        u[k] = evaluate_profile(sol, wv);
    }

    return FunctionalSolution{std::move(u), std::move(w), z, sol, sol.gamma, psi_w2,
                              sol.gamma * psi_w2};
}

FunctionalSolution reconstruct_degenerate(const ProblemData& p, int n_ode, const ScalarField& z) {
    p.validate();
    if (!p.degenerate()) throw InvalidProblem("degenerate path requires w1 == w2");
    if (n_ode < 1) throw InvalidProblem("n_ode must be positive");
    const double wbar = p.w1;
    const TaggedGrid& grid = z.grid();

    ScalarField w(grid, wbar);

    if (p.u1 == p.u2) {
        // Fully constant data: both fields are constant.
        ScalarField u(grid, p.u1);
        return FunctionalSolution{std::move(u), std::move(w), z, std::nullopt, 0.0, 0.0, 0.0};
    }

    // Tabulate lambda(s) = integral of a(t, wbar) over the u-range; the
    // single remaining equation becomes lambda(u) harmonic, affine in z.
    const double s_lo = std::min(p.u1, p.u2), s_hi = std::max(p.u1, p.u2);
    MonotoneTransform lambda;
    lambda.kind = MonotoneTransform::Kind::theta;
    lambda.nodes.resize(static_cast<std::size_t>(n_ode) + 1);
    lambda.values.resize(lambda.nodes.size());
    const double h = (s_hi - s_lo) / n_ode;
    std::vector<double> integrand(lambda.nodes.size());
    for (std::size_t k = 0; k < lambda.nodes.size(); ++k) {
        lambda.nodes[k] = s_lo + static_cast<double>(k) * h;
        const double av = p.coeffs.a(lambda.nodes[k], wbar);
        if (!std::isfinite(av) || av <= 0.0)
            throw NonPositiveCoefficient(lambda.nodes[k], wbar, 'a', av);
        integrand[k] = av;
    }
    lambda.nodes.back() = s_hi;
    lambda.values[0] = 0.0;
    for (std::size_t k = 0; k + 1 < lambda.nodes.size(); ++k)
        lambda.values[k + 1] =
            lambda.values[k] + 0.5 * h * (integrand[k] + integrand[k + 1]);
    lambda.direction = 1;

    const double l1 = (p.u1 == s_lo) ? 0.0 : lambda.back_value();
    const double l2 = (p.u2 == s_lo) ? 0.0 : lambda.back_value();

    ScalarField u(grid);
    for (int k = 0; k < z.size(); ++k) {
        const double zv = clamp_z(z[k]);
        u[k] = invert(lambda, l1 + (l2 - l1) * zv);
    }
    return FunctionalSolution{std::move(u), std::move(w), z, std::nullopt, 0.0, 0.0, 0.0};
}

DiagnosticReport verify_theta_psi_proportionality(const FunctionalSolution& fsol,
                                                  const MonotoneTransform& theta,
                                                  const MonotoneTransform& psi) {
    DiagnosticReport rep;
    const double psi_w2 = psi.back_value();
    for (int k = 0; k < fsol.w.size(); ++k) {
        const double big_theta = theta(fsol.w[k]);
        const double big_psi = psi(fsol.w[k]);
        rep.max_theta_dev = std::max(rep.max_theta_dev, std::abs(big_theta - fsol.gamma * big_psi));
        rep.max_psi_dev = std::max(rep.max_psi_dev, std::abs(big_psi - psi_w2 * fsol.z[k]));
    }
    return rep;
}

PdeResidual pde_residual(const FunctionalSolution& fsol, const CoefficientPair& coeffs) {
    const TaggedGrid& grid = fsol.u.grid();
    const int n = grid.n_unknowns();

    std::vector<double> a_cell(static_cast<std::size_t>(n)), b_cell(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        a_cell[r] = coeffs.a(fsol.u[r], fsol.w[r]);
        b_cell[r] = coeffs.b(fsol.u[r], fsol.w[r]);
    }

    auto harm = [](double a, double b) { return 2.0 * a * b / (a + b); };
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};

    PdeResidual res;
    for (int r = 0; r < n; ++r) {
        const int cell = grid.cells()[r];
        const int i = cell % grid.nx(), j = cell / grid.nx();

        bool interior = true;
        int nb[4];
        for (int d = 0; d < 4; ++d) {
            if (!grid.is_inside(i + di[d], j + dj[d])) {
                interior = false;
                break;
            }
            nb[d] = grid.unknown_of(i + di[d], j + dj[d]);
        }
        if (!interior) continue;

        double div_u = 0.0, div_w = 0.0;
        for (int d = 0; d < 4; ++d) {
            const double h = grid.spacing(d < 2 ? 0 : 1);
            div_u += harm(a_cell[r], a_cell[nb[d]]) * (fsol.u[nb[d]] - fsol.u[r]) / (h * h);
            div_w += harm(b_cell[r], b_cell[nb[d]]) * (fsol.w[nb[d]] - fsol.w[r]) / (h * h);
        }
        res.res_u = std::max(res.res_u, std::abs(div_u));
        res.res_w = std::max(res.res_w, std::abs(div_w));
    }
    return res;
}

}  // namespace funsol
