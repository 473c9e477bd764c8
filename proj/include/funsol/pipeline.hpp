#pragma once

#include <optional>

#include "funsol/core_types.hpp"
#include "funsol/kirchhoff.hpp"
#include "funsol/laplace_mixed.hpp"
#include "funsol/reconstruction.hpp"
#include "funsol/zwirner_ode.hpp"

namespace funsol {

struct Tolerances {
    double endpoint = 0.0;   // <= 0 selects 1e-12 * max(1, |u2 - u1|)
    double linear = 1e-10;   // CG relative residual
    double picard = 1e-8;    // direct-solver max node update
    double compare = 5e-3;   // verify-mode agreement threshold
};

/// Everything the full reduction produces for one problem on one grid.
/// The grid passed to run_functional_pipeline must outlive the result.
struct PipelineResult {
    HypothesisReport hypotheses;
    UniquenessCertificate uniqueness;
    GammaBracket bracket;          // verified bracket ({0,0} when gamma = 0)
    std::optional<MonotoneTransform> theta;
    std::optional<MonotoneTransform> psi;
    double gamma_from_transforms = 0.0;
    FunctionalSolution fields;
    DiagnosticReport diagnostics;
    PdeResidual residual;
};

/// The constructive reduction end to end: hypothesis check, two-point solve,
/// transforms, one geometric Laplace solve, reconstruction, diagnostics.
/// w1 == w2 takes the degenerate uncoupled path (constant w, single-equation
/// transform) on the same grid machinery.
PipelineResult run_functional_pipeline(const ProblemData& p, const TaggedGrid& grid, int n_ode,
                                       const Tolerances& tol = {});

}  // namespace funsol
