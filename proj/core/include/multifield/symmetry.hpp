#pragma once

#include <functional>
#include <string>

#include "multifield/engine.hpp"
#include "multifield/point_eval.hpp"

namespace multifield {

// One-parameter virtual-variation family: a referential field w(X) moving
// material labels (kept divergence-free so the referential volume element is
// untouched), a spatial field v(x) moving placements, and an algebra vector
// driving the group action on the order parameter. Any subset may be absent.
struct SymmetrySpec {
  std::string name;
  std::function<DVec3(const DVec3& X)> w_field;
  std::function<DVec3(const DVec3& x)> v_field;
  VecX algebra_dir;  // empty when the family does not act on nu
  Vec3 x0 = Vec3::Zero();
  Vec3 X0 = Vec3::Zero();
};

SymmetrySpec spatial_translation(const Vec3& c);
// v = qdot x (x - x0), paired with the algebra direction qdot so models with
// an SO(3) action rotate the order parameter along.
SymmetrySpec spatial_rotation(const Vec3& qdot, const Vec3& x0);
SymmetrySpec referential_translation(const Vec3& c);
SymmetrySpec referential_rotation(const Vec3& qdot, const Vec3& X0);
// w = curl A: divergence-free by construction for any potential A(X).
SymmetrySpec isochoric_referential_field(
    std::function<DVec3(const DVec3& X)> potential);

// Div w at X (exact, via the dual Jacobian); families are expected to keep
// this at round-off.
double referential_divergence(const SymmetrySpec& sym, const Vec3& X);

// Sum of the three directional derivatives of the Lagrangian density along
// the composed family at s = 0, each taken with its chain-rule slots:
//   referential: X+sw, F(I+s grad w)^-1, gradnu (I+s grad w)^-1
//   spatial:     x+sv, xdot+s dv[xdot], (I+s grad v)F
//   action:      nu+s xi, nudot+s dxi[nudot], gradnu+s dxi[gradnu]
// Zero means the family is a symmetry of the model at this state.
double invariance_defect(const MaterialModel& m, const SymmetrySpec& sym,
                         const StatePoint& sp);

struct NoetherCurrent {
  VecX Q;     // per node
  MatX flux;  // 3 x N referential flux
};

NoetherCurrent noether_current(const MaterialModel& m, const SymmetrySpec& sym,
                               const Grid& g, const CanonicalState& s);

// Qdot + Div(flux) per node, central time difference across three states a
// time dt apart; boundary entries on bounded axes are zeroed.
VecX noether_residual(const MaterialModel& m, const SymmetrySpec& sym,
                      const Grid& g, const CanonicalState& s0,
                      const CanonicalState& s1, const CanonicalState& s2,
                      double dt);

}  // namespace multifield
