#pragma once

#include <iosfwd>
#include <vector>

#include "multifield/point_eval.hpp"

namespace multifield {

// Characteristic-level view of the dynamics: one material point with the
// deformation gradient and order-parameter gradient frozen at reference
// values, so the canonical equations close without any divergence terms.
// Trajectories of this reduced system are the characteristics of the
// Hamilton-Jacobi equation for the generating function S.
struct PointModel {
  MaterialModel base;
  Vec3 Xref = Vec3::Zero();
  Mat3 frozen_F = Mat3::Identity();
  MatX frozen_gradnu;  // ambient_dim x 3
};

PointModel make_point_model(const MaterialModel& base);

struct PointState {
  Vec3 x = Vec3::Zero();
  Vec3 p = Vec3::Zero();
  VecX nu;
  VecX mu;
  double S = 0.0;  // accumulated action along the characteristic
  double time = 0.0;
};

double point_hamiltonian(const PointModel& pm, const PointState& st);

// Lagrangian density at the Legendre-inverted rates of the current momenta.
double point_lagrangian(const PointModel& pm, const PointState& st);

// One position-Verlet step mirroring the field stepper (half kick, drift
// with retraction and momentum re-projection, half kick), plus trapezoidal
// accumulation of the action S between the step's endpoint states.
void point_step(const PointModel& pm, PointState& st, double dt);

// A star of characteristics sharing one initial momentum pair (pstar,
// mustar): the center seeded at (x0, nu0) plus one pair offset by +-delta
// along each x axis and each nu axis.  Initial actions come from the
// generating seed S0(x, nu) = pstar.(x - x0) + mustar.nu, so finite
// differences of S across the star recover the momenta.
struct GeneratingTable {
  double delta = 0.0;
  double dt = 0.0;
  Vec3 x0 = Vec3::Zero();
  VecX nu0;
  Vec3 pstar = Vec3::Zero();
  VecX mustar;
  // paths[c][n]: characteristic c at step n.  c = 0 is the center;
  // 1+2a / 2+2a are the -/+ offsets along x axis a; 7+2i / 8+2i the -/+
  // offsets along nu axis i.
  std::vector<std::vector<PointState>> paths;

  long x_minus(int axis) const { return 1 + 2 * axis; }
  long x_plus(int axis) const { return 2 + 2 * axis; }
  long nu_minus(int i) const { return 7 + 2 * i; }
  long nu_plus(int i) const { return 8 + 2 * i; }
  long steps() const {
    return paths.empty() ? 0 : static_cast<long>(paths[0].size());
  }
};

GeneratingTable generating_table(const PointModel& pm, const Vec3& x0,
                                 const VecX& nu0, const Vec3& pstar,
                                 const VecX& mustar, double delta, double dt,
                                 int steps);

// Residuals of the Hamilton-Jacobi relations measured on a table, maxima
// over the interior time steps:
//   pde:       |dS/dt|_along - xdot.dS/dx - nudot.dS/dnu + H(x, dS/dx, nu,
//              dS/dnu)|  -- the along-characteristic rate minus the
//              advective part recovers the fixed-point dS/dt, so this is
//              the HJ equation itself;
//   canonical: max |dS/dx - p| + max |dS/dnu - mu|.
// Spatial derivatives of S are centered differences across the star using
// the actual (evolved) separations.  Throws CausticError when a separation
// collapses below 1e-2 of its initial width: past a focal point the star no
// longer parameterizes a single-valued S.
struct HJResidual {
  double pde = 0.0;
  double canonical = 0.0;
};
HJResidual hj_residual(const PointModel& pm, const GeneratingTable& tab);

// max_n |(S_{n+1} - S_{n-1}) / 2 dt - L_n| along the center characteristic:
// how well the accumulated action differentiates back to the Lagrangian.
double action_rate_defect(const PointModel& pm, const GeneratingTable& tab);

// Oscillation period of (x - x_eq).axis, measured from the first and third
// sign crossings (linearly interpolated).  Throws ConfigError if no full
// period fits in max_steps.
double measured_period(const PointModel& pm, PointState st, double dt,
                       int max_steps, const Vec3& x_eq, const Vec3& axis);

// One row per (step, characteristic): t, char, x, p, nu, mu, S.
void write_generating_table(std::ostream& os, const GeneratingTable& tab);

}  // namespace multifield
