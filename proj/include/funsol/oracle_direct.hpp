#pragma once

#include "funsol/core_types.hpp"
#include "funsol/reconstruction.hpp"

namespace funsol {

/// State of the frozen-coefficient (Picard) iteration for the full coupled
/// system; used to cross-validate the functional-reduction pipeline.
struct PicardState {
    ScalarField u;
    ScalarField w;
    int iteration = 0;
    double last_update_norm = 0.0;
};

struct PicardOptions {
    double tol = 1e-8;          // max node update at which to stop
    int max_iter = 500;
    double damping = 1.0;       // 1 = undamped; 0.5 helps strongly coupled data
    double tol_linear = 1e-12;  // inner CG relative residual
};

/// Alternately solves the two linear variable-coefficient problems with the
/// coefficients frozen at the previous iterate (harmonic-mean faces, CG) until
/// the max node update drops below tol.  The initial guess freezes the
/// coefficients at (u1, w1).  Throws NoConvergence after max_iter sweeps;
/// there is no general convergence guarantee for this iteration.
PicardState picard_solve(const ProblemData& p, const TaggedGrid& grid,
                         const PicardOptions& opts = {});

/// Agreement between the functional pipeline and the direct solve on the same
/// grid: max node-wise differences and the discrete gradient energy of the
/// difference fields.
struct ComparisonReport {
    double max_diff_u = 0.0;
    double max_diff_w = 0.0;
    double energy_u = 0.0;
    double energy_w = 0.0;
};

ComparisonReport compare(const FunctionalSolution& fsol, const PicardState& direct);

}  // namespace funsol
