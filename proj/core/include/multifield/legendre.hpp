#pragma once

#include "multifield/material.hpp"
#include "multifield/types.hpp"

namespace multifield {

// Solve rho0 * d(chi)/d(nudot)(nu, nudot) = mu for nudot in the tangent
// space at nu. Damped Newton, initial guess mu/rho0, residual tolerance
// 1e-12 * max(1, |mu|), at most 50 iterations. Throws LegendreError on
// non-convergence; `node` tags the failure site in field-level callers.
VecX invert_micro_momentum(const MaterialModel& m, double rho0, const VecX& nu,
                           const VecX& mu, long node = -1);

// The same inversion with seeded inputs: values go through the Newton path
// above, and the returned tangents hold the implicit derivative of the
// inverse map along whatever direction (rho0, nu, mu) were seeded with,
// obtained from one linear solve against the nudot Hessian of chi. Flat
// manifolds only (the tangent projector is the identity there). The Hessian
// is formed by central differences of the exact gradient, which limits
// tangent accuracy to roughly 1e-10 for smooth chi; values are exact.
DVecX invert_micro_momentum_dual(const MaterialModel& m, const Dual& rho0,
                                 const DVecX& nu, const DVecX& mu);

// Gradient of chi with respect to nudot at fixed nu (ambient components).
VecX chi_rate_gradient(const MaterialModel& m, const VecX& nu,
                       const VecX& nudot);

}  // namespace multifield
