#pragma once

#include <vector>

#include "multifield/boundary.hpp"
#include "multifield/grid.hpp"
#include "multifield/state.hpp"
#include "multifield/stencil.hpp"

namespace multifield {

// Per-node geometric caches derived from a canonical state: deformation
// gradients and tangent-projected order-parameter gradients.
struct StateGeometry {
  std::array<MatX, 3> gx;   // placement gradient columns, 3 x N each
  std::array<MatX, 3> gnu;  // covariant order-parameter gradient columns
};
StateGeometry state_geometry(const MaterialModel& m, const Grid& g,
                             const CanonicalState& s);

struct RhsResult {
  MatX xdot, pdot;    // 3 x N
  MatX nudot, mudot;  // k x N
};

// Traction defect on one Natural face node: prescribed traction minus the
// outward stress flux. tx = tbar - P n, tnu = frak-t - S n.
struct NaturalTrace {
  long node;
  int axis;
  int side;
  Vec3 tx = Vec3::Zero();
  VecX tnu;
};

// Raw ingredients of the canonical right-hand side: pointwise rates from
// momentum inversion, bulk momentum rates Div(stress) - dH/d(configuration)
// without boundary handling, and the Natural-face traction defects.
struct HamiltonParts {
  MatX xdot, nudot;
  MatX pdot_bulk, mudot_bulk;  // mudot_bulk unprojected ambient values
  std::vector<NaturalTrace> traces;
};
HamiltonParts hamilton_parts(const MaterialModel& m, const Grid& g,
                             const BoundarySpec& bc, const CanonicalState& s);

// Canonical rates: rates from pointwise momentum inversion; momentum rates
// from the configuration-slot derivatives of the Hamiltonian density plus
// stress divergences. Natural faces add a penalty aligning the boundary flux
// with the prescribed traction; Dirichlet faces pin all four rates to zero.
RhsResult hamilton_rhs(const MaterialModel& m, const Grid& g,
                       const BoundarySpec& bc, const CanonicalState& s);

// Independent second-order assembly from the Lagrangian side, at given rates:
// pdot = rho0 b + Div P, mudot = dL/dnu + Div S (both raw ambient values).
struct LagrangeAssembly {
  MatX pdot;
  MatX mudot;
};
LagrangeAssembly lagrange_assembly(const MaterialModel& m, const Grid& g,
                                   const CanonicalState& s, const MatX& xdot,
                                   const MatX& nudot);

// Overwrite Dirichlet nodes with prescribed data and zero momenta there.
void apply_dirichlet(const MaterialModel& m, const Grid& g,
                     const BoundarySpec& bc, CanonicalState& s);

// One time-reversible split step: half momentum kick, full drift at the
// mid-step momenta, half kick at the new configuration. The order parameter
// is retracted to the manifold after the drift and the micro momentum is
// re-projected onto the new tangent space.
CanonicalState step(const MaterialModel& m, const Grid& g,
                    const BoundarySpec& bc, const CanonicalState& s, double dt);

// Hamiltonian density per node.
VecX hamiltonian_field(const MaterialModel& m, const Grid& g,
                       const CanonicalState& s);

// Integrated Hamiltonian minus the surface-potential energy on Natural faces.
double total_energy(const MaterialModel& m, const Grid& g,
                    const BoundarySpec& bc, const CanonicalState& s);

// Pointwise energy-rate defect h_dot - Div(xdot P + nudot S) at the middle
// of three consecutive states a time dt apart. Interior nodes only; boundary
// entries are zero.
VecX energy_balance_residual(const MaterialModel& m, const Grid& g,
                             const BoundarySpec& bc, const CanonicalState& s0,
                             const CanonicalState& s1, const CanonicalState& s2,
                             double dt);

// Pointwise kinematic bundle at one node, with the rates supplied by the
// caller (typically from momentum inversion).
StatePoint state_point_at(const MaterialModel& m, const Grid& g,
                          const CanonicalState& s, const StateGeometry& geo,
                          long node, const Vec3& xdot, const VecX& nudot);

}  // namespace multifield
