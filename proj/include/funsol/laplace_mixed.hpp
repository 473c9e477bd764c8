#pragma once

#include <vector>

#include "funsol/core_types.hpp"

namespace funsol {

/// Compressed sparse row matrix; rows sorted by column within each row.
struct SparseMatrixCsr {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
};

/// The eliminated-Dirichlet discretization of a divergence-form operator on a
/// TaggedGrid: 5-point finite volume with harmonic-mean face coefficients,
/// half-cell elimination on gamma1/gamma2 faces (values g1, g2) and zero-flux
/// (mirror ghost) on gamma3 faces.  Matrix is -div(alpha grad .), symmetric
/// positive definite once gamma1 or gamma2 is nonempty.
struct MixedLaplaceSystem {
    const TaggedGrid* grid = nullptr;
    SparseMatrixCsr matrix;
    std::vector<double> rhs;
    double dirichlet_lo = 0.0;  // min(g1, g2), for the discrete bound check
    double dirichlet_hi = 1.0;
};

/// The coefficient-free geometric problem: alpha = 1, z = 0 on gamma1,
/// z = 1 on gamma2, no flux on gamma3.
MixedLaplaceSystem assemble(const TaggedGrid& grid);

/// Variable-coefficient assembly used by the direct (fixed-point) solver:
/// `alpha` holds the coefficient at cell centers; on Dirichlet boundary faces
/// the coefficient is pinned by the boundary data (alpha_g1 on gamma1,
/// alpha_g2 on gamma2) and combined with the cell value by harmonic mean.
MixedLaplaceSystem assemble_weighted(const TaggedGrid& grid, const ScalarField& alpha,
                                     double alpha_g1, double alpha_g2,
                                     double g1, double g2);

/// Conjugate-gradient solve to a relative residual `tol`.  The discrete
/// maximum principle bounds the exact solution by the Dirichlet data; the
/// iteration continues (within the cap) until the iterate also satisfies the
/// bounds to 1e-12 slack, so a returned field always honors them.
/// Throws SolverStagnation when the cap of 10 * n iterations is exhausted.
ScalarField solve_z(const MixedLaplaceSystem& system, double tol = 1e-10);

}  // namespace funsol
