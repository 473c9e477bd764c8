#include "funsol/laplace_mixed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace funsol {

void SparseMatrixCsr::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
}

namespace {

double harmonic_mean(double a, double b) { return 2.0 * a * b / (a + b); }

struct Entry {
    int col;
    double val;
};

MixedLaplaceSystem assemble_impl(const TaggedGrid& grid, const double* alpha,
                                 double alpha_g1, double alpha_g2, double g1, double g2) {
    const int n = grid.n_unknowns();
    MixedLaplaceSystem sys;
    sys.grid = &grid;
    sys.rhs.assign(static_cast<std::size_t>(n), 0.0);
    sys.dirichlet_lo = std::min(g1, g2);
    sys.dirichlet_hi = std::max(g1, g2);

    sys.matrix.n = n;
    sys.matrix.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);

    std::vector<Entry> row;
    row.reserve(5);
    std::vector<int> cols;
    std::vector<double> vals;
    cols.reserve(static_cast<std::size_t>(n) * 5);
    vals.reserve(static_cast<std::size_t>(n) * 5);

    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};

    for (int r = 0; r < n; ++r) {
        const int cell = grid.cells()[r];
        const int i = cell % grid.nx(), j = cell / grid.nx();
        const double ac = alpha ? alpha[r] : 1.0;

        row.clear();
        double diag = 0.0;
        for (int d = 0; d < 4; ++d) {
            const int axis = (d < 2) ? 0 : 1;
            const int side = (d % 2 == 0) ? -1 : 1;
            const double h = grid.spacing(axis);
            const int in = i + di[d], jn = j + dj[d];
            if (grid.is_inside(in, jn)) {
                const int rn = grid.unknown_of(in, jn);
                const double an = alpha ? alpha[rn] : 1.0;
                const double t = harmonic_mean(ac, an) / (h * h);
                diag += t;
                row.push_back({rn, -t});
            } else {
                const FaceTag tag = *grid.face_tag(cell, axis, side);
                if (tag == FaceTag::gamma3) continue;  // mirror ghost: zero flux
                const double af = (tag == FaceTag::gamma1) ? alpha_g1 : alpha_g2;
                const double g = (tag == FaceTag::gamma1) ? g1 : g2;
                // Dirichlet value half a cell away: eliminated ghost.
                const double t = 2.0 * harmonic_mean(ac, af) / (h * h);
                diag += t;
                sys.rhs[r] += t * g;
            }
        }
        row.push_back({r, diag});
        std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
        for (const Entry& e : row) {
            cols.push_back(e.col);
            vals.push_back(e.val);
        }
        sys.matrix.row_ptr[r + 1] = static_cast<int>(cols.size());
    }
    sys.matrix.col = std::move(cols);
    sys.matrix.val = std::move(vals);
    return sys;
}

}  // namespace

MixedLaplaceSystem assemble(const TaggedGrid& grid) {
    return assemble_impl(grid, nullptr, 1.0, 1.0, 0.0, 1.0);
}

MixedLaplaceSystem assemble_weighted(const TaggedGrid& grid, const ScalarField& alpha,
                                     double alpha_g1, double alpha_g2, double g1, double g2) {
    if (&alpha.grid() != &grid) throw GridMismatch("coefficient field lives on a different grid");
    for (const double v : alpha.values())
        if (!std::isfinite(v) || v <= 0.0)
            throw Error("cell coefficient must be positive and finite, got " + std::to_string(v));
    if (!(alpha_g1 > 0.0) || !(alpha_g2 > 0.0))
        throw Error("boundary-face coefficients must be positive");
    return assemble_impl(grid, alpha.values().data(), alpha_g1, alpha_g2, g1, g2);
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool within_bounds(const std::vector<double>& x, double lo, double hi, double slack) {
    for (const double v : x)
        if (v < lo - slack || v > hi + slack) return false;
    return true;
}

}  // namespace

ScalarField solve_z(const MixedLaplaceSystem& system, double tol) {
    if (!(tol > 0.0)) throw Error("linear solver tolerance must be positive");
    const SparseMatrixCsr& A = system.matrix;
    const int n = A.n;
    const long max_iter = 10L * n;
    constexpr double kBoundSlack = 1e-12;

    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    std::vector<double> r = system.rhs;
    const double rhs_norm = std::sqrt(dot(r, r));
    if (rhs_norm == 0.0) {
        // Pure zero data: the zero field is the solution.
        return ScalarField(*system.grid, std::move(x));
    }
    const double target = tol * rhs_norm;

    std::vector<double> p = r;
    std::vector<double> Ap(static_cast<std::size_t>(n));
    double rho = dot(r, r);

    // Stop once the residual target is met AND the iterate obeys the discrete
    // bounds (the exact solution does; a violating iterate is just not
    // converged enough).  The machine floor ends the loop unconditionally.
    const double floor = 1e-15 * rhs_norm;
    long iter = 0;
    while (iter < max_iter) {
        const double rnorm = std::sqrt(rho);
        if (rnorm <= floor) break;
        if (rnorm <= target &&
            within_bounds(x, system.dirichlet_lo, system.dirichlet_hi, kBoundSlack))
            break;
        A.multiply(p, Ap);
        const double alpha = rho / dot(p, Ap);
        for (int k = 0; k < n; ++k) x[k] += alpha * p[k];
        for (int k = 0; k < n; ++k) r[k] -= alpha * Ap[k];
        const double rho_next = dot(r, r);
        const double beta = rho_next / rho;
        for (int k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
        rho = rho_next;
        ++iter;
    }
    if (iter >= max_iter)
        throw SolverStagnation("conjugate gradient did not reach tolerance " + std::to_string(tol) +
                               " within " + std::to_string(max_iter) + " iterations");
    return ScalarField(*system.grid, std::move(x));
}

}  // namespace funsol
