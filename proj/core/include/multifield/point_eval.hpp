#pragma once

#include "multifield/legendre.hpp"
#include "multifield/material.hpp"
#include "multifield/types.hpp"

namespace multifield {

// One material point in the Lagrangian picture. gradnu is ambient_dim x 3;
// axes beyond the grid dimension carry zero columns (and identity columns
// in F).
struct StatePoint {
  Vec3 X = Vec3::Zero();
  Vec3 x = Vec3::Zero();
  Vec3 xdot = Vec3::Zero();
  Mat3 F = Mat3::Identity();
  VecX nu;
  VecX nudot;
  MatX gradnu;
};

StatePoint zero_state(const MaterialModel& m);

// Rejects states off the manifold, with non-tangent rates, or with
// non-positive det F. tol guards the quadratic constraint checks.
void validate_state(const MaterialModel& m, const StatePoint& s,
                    double tol = 1e-10);

// Everything the balances need at one point, produced in one sweep of
// seeded dual evaluations through the model closures.
struct DerivedPoint {
  double lagrangian = 0.0;
  double rho0 = 0.0;
  Mat3 piola = Mat3::Zero();       // -d L / dF
  MatX microstress;                // -d L / d(gradnu), ambient_dim x 3
  VecX self_force;                 // -rho0 de/dnu
  Vec3 body_force = Vec3::Zero();  // -dw/dx, per unit mass
  VecX substructural_force;        // -dw/dnu, per unit mass
  Vec3 momentum = Vec3::Zero();    // d L / d xdot
  VecX micro_momentum;             // d L / d nudot, tangent-projected
  double kappa = 0.0;              // nudot . dchi/dnudot - chi
  double energy_density = 0.0;     // p.xdot + mu.nudot - L
  Mat3 eshelby = Mat3::Zero();
};

// Dual-ready argument pack for evaluating L along seeded directions.
struct DualArgs {
  DVec3 X, x, xdot;
  DMat3 F;
  DVecX nu, nudot;
  DMatX gradnu;
};

DualArgs lift_args(const StatePoint& s);

// L = 1/2 rho0 |xdot|^2 + rho0 chi - rho0 e - rho0 w, over dual arguments.
Dual lagrangian_dual(const MaterialModel& m, const DualArgs& a);

double lagrangian_density(const MaterialModel& m, const StatePoint& s);

DerivedPoint derived_fields(const MaterialModel& m, const StatePoint& s);

// kappa alone, from nu and nudot.
double kinetic_energy(const MaterialModel& m, const VecX& nu,
                      const VecX& nudot);

// Canonical rates from momenta at a point. p is trivially p/rho0; mu goes
// through the Newton inversion in the tangent space.
struct Rates {
  Vec3 xdot;
  VecX nudot;
};
Rates velocity_from_momenta(const MaterialModel& m, const Vec3& X,
                            const VecX& nu, const Vec3& p, const VecX& mu,
                            long node = -1);

// H = p.xdot + mu.nudot - L at the inverted rates.
double hamiltonian_density(const MaterialModel& m, const Vec3& X, const Vec3& x,
                           const Vec3& p, const Mat3& F, const VecX& nu,
                           const VecX& mu, const MatX& gradnu);

// Partial derivatives of H in all slots, by the Legendre envelope relations:
// derivatives in the configuration slots are the negatives of the Lagrangian
// ones at the inverted rates; derivatives in the momentum slots are the rates.
struct HamiltonianPartials {
  Rates rates;
  Vec3 dx;     // dH/dx
  VecX dnu;    // dH/dnu (ambient)
  Mat3 dF;     // dH/dF  (= piola)
  MatX dgradnu;  // dH/d(gradnu) (= microstress)
  Vec3 dX;     // explicit dH/dX
  double density = 0.0;
};
HamiltonianPartials hamiltonian_partials(const MaterialModel& m, const Vec3& X,
                                         const Vec3& x, const Vec3& p,
                                         const Mat3& F, const VecX& nu,
                                         const VecX& mu, const MatX& gradnu,
                                         long node = -1);

// Eshelby-type configurational stress:
//   rho0 (e + w) I - F^T P - (gradnu)^T S.
Mat3 eshelby_tensor(const MaterialModel& m, const StatePoint& s);

}  // namespace multifield
