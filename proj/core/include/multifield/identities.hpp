#pragma once

#include "multifield/engine.hpp"
#include "multifield/point_eval.hpp"

namespace multifield {

// Residual of the pointwise rotational identity tying the skew part of
// (dL/dF) F^T to the group-action terms: for each algebra axis q,
//   axial(skw(dL/dF F^T)) . q + 1/2 * (action part of the invariance defect)
// vanishes when the model is invariant under simultaneous spatial and
// order-parameter rotation. Exact (no discretization); requires an action
// and no external potential.
Vec3 spatial_rotation_identity(const MaterialModel& m, const StatePoint& sp);

// axial(skw(F^T dL/dF + (gradnu)^T dL/d(gradnu))): zero for referentially
// isotropic (homogeneous) materials.
Vec3 material_rotation_identity(const MaterialModel& m, const StatePoint& sp);

// Explicit referential derivative of the Lagrangian density: seeds only the
// X slots of rho0 and e, holding every kinematic entry fixed. Zero for
// homogeneous models.
Vec3 explicit_material_force(const MaterialModel& m, const StatePoint& sp);

// Configurational (pseudomomentum) balance along a trajectory:
//   residual = d/dt(F^T p + gradnu^T mu)
//              - Div((1/2 rho0 |xdot|^2 + rho0 chi) I - Eshelby)
//              + dL/dX|explicit
// evaluated per interior node with central time differences.
// `inhomogeneity` carries the dL/dX field so callers can isolate the
// material force on explicitly inhomogeneous bodies.
struct PseudomomentumResidual {
  MatX residual;       // 3 x N, interior nodes
  MatX inhomogeneity;  // 3 x N, dL/dX at the middle state
};
PseudomomentumResidual pseudomomentum_residual(const MaterialModel& m,
                                               const Grid& g,
                                               const CanonicalState& s0,
                                               const CanonicalState& s1,
                                               const CanonicalState& s2,
                                               double dt);

// Nodewise gap between the substructural balance assembled from its named
// pieces, -rho0 dchi/dnu - z - rho0 beta - Div S, and the same combination
// built from whole-Lagrangian derivatives (dL/dnu and -dL/dgradnu in single
// seeded evaluations). The d/dt(rho0 dchi/dnudot) term is identical in both
// assemblies and cancels from the gap, so a single state suffices. Zero up
// to round-off by construction; nonzero values flag bookkeeping errors in
// the named fields, not discretization error.
VecX substructural_consistency(const MaterialModel& m, const Grid& g,
                               const CanonicalState& s1);

}  // namespace multifield
