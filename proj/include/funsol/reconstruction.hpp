#pragma once

#include <optional>

#include "funsol/core_types.hpp"
#include "funsol/kirchhoff.hpp"
#include "funsol/zwirner_ode.hpp"

namespace funsol {

/// A functional solution of the coupled system: u(x) = U(w(x)) with the pair
/// reconstructed from the geometric field z through the transforms.
/// `profile` is absent on the degenerate w1 == w2 path, where w is constant
/// and no one-dimensional profile exists.
struct FunctionalSolution {
    ScalarField u;
    ScalarField w;
    ScalarField z;
    std::optional<TwoPointSolution> profile;
    double gamma = 0.0;
    double psi_w2 = 0.0;
    double theta_w2 = 0.0;
};

/// Builds w(x) = psi^{-1}(psi(w2) z(x)) and u(x) = U(w(x)) (linear
/// interpolation of the tabulated trajectory).  z must lie in [0,1] up to
/// 1e-12 slack; worse violations throw OutOfRange.
FunctionalSolution reconstruct(const TwoPointSolution& sol, const MonotoneTransform& psi,
                               const ScalarField& z);

/// Degenerate path (w1 == w2 == wbar): w is identically wbar and the single
/// remaining equation is solved through the one-variable transform
/// lambda(s) = integral of a(t, wbar), giving lambda(u) affine in z.
FunctionalSolution reconstruct_degenerate(const ProblemData& p, int n_ode, const ScalarField& z);

/// Node-wise deviations from the proportionality of the transformed fields:
/// max |theta(w(x)) - gamma * psi(w(x))| and max |psi(w(x)) - psi(w2) z(x)|.
/// Diagnostic only; never throws on large deviations.
struct DiagnosticReport {
    double max_theta_dev = 0.0;
    double max_psi_dev = 0.0;
};

DiagnosticReport verify_theta_psi_proportionality(const FunctionalSolution& fsol,
                                                  const MonotoneTransform& theta,
                                                  const MonotoneTransform& psi);

/// Max absolute discrete divergence residuals of the reconstructed fields,
/// evaluated with harmonic-mean face coefficients at every inside cell whose
/// four neighbors are all inside.
struct PdeResidual {
    double res_u = 0.0;
    double res_w = 0.0;
};

PdeResidual pde_residual(const FunctionalSolution& fsol, const CoefficientPair& coeffs);

/// Linear interpolation of the trajectory U at an arbitrary w in [w1, w2].
double evaluate_profile(const TwoPointSolution& sol, double w);

}  // namespace funsol
