#include "multifield/identities.hpp"

#include "multifield/errors.hpp"
#include "multifield/group_action.hpp"
#include "multifield/legendre.hpp"

namespace multifield {

namespace {

// Action part of the invariance defect for algebra direction qdot: the
// directional derivative of L along nu -> nu + s xi with the chain-rule
// seeds in nudot and gradnu.
double action_defect(const MaterialModel& m, const StatePoint& sp,
                     const VecX& qdot) {
  const VecX xi = generator_value(*m.action, sp.nu, qdot);
  const VecX dxi_nudot =
      generator_nu_derivative(*m.action, sp.nu, qdot, sp.nudot);
  DualArgs a = lift_args(sp);
  for (int i = 0; i < xi.size(); ++i) {
    a.nu(i).d = xi(i);
    a.nudot(i).d = dxi_nudot(i);
  }
  for (int j = 0; j < 3; ++j) {
    const VecX dxi_col =
        generator_nu_derivative(*m.action, sp.nu, qdot, sp.gradnu.col(j));
    for (int i = 0; i < xi.size(); ++i) a.gradnu(i, j).d = dxi_col(i);
  }
  return tangent(lagrangian_dual(m, a));
}

}  // namespace

Vec3 spatial_rotation_identity(const MaterialModel& m, const StatePoint& sp) {
  if (!m.action)
    throw ConfigError("rotation identity needs a group action on model '" +
                      m.id + "'");
  if (m.has_w())
    throw ConfigError("rotation identity assumes L independent of x; model '" +
                      m.id + "' carries an external potential");
  const DerivedPoint d = derived_fields(m, sp);
  // dL/dF = -P.
  const Mat3 lf_ft = -d.piola * sp.F.transpose();
  Vec3 res = axial(skew_part(lf_ft));
  const int gd = m.action->group_dim;
  for (int q = 0; q < gd && q < 3; ++q) {
    VecX qdot = VecX::Zero(gd);
    qdot(q) = 1.0;
    res(q) += 0.5 * action_defect(m, sp, qdot);
  }
  return res;
}

Vec3 material_rotation_identity(const MaterialModel& m, const StatePoint& sp) {
  if (!m.homogeneous)
    throw ConfigError("material rotation identity assumes a homogeneous "
                      "model; '" + m.id + "' is not");
  const DerivedPoint d = derived_fields(m, sp);
  const Mat3 t = sp.F.transpose() * (-d.piola) +
                 sp.gradnu.transpose() * (-d.microstress);
  return axial(skew_part(t));
}

Vec3 explicit_material_force(const MaterialModel& m, const StatePoint& sp) {
  Vec3 out;
  DualArgs a = lift_args(sp);
  for (int i = 0; i < 3; ++i) {
    a.X(i).d = 1.0;
    out(i) = tangent(lagrangian_dual(m, a));
    a.X(i).d = 0.0;
  }
  return out;
}

namespace {

struct ConfigFields {
  MatX pseudo;      // 3 x N: F^T p + gradnu^T (rho0 dchi/dnudot)
  std::array<MatX, 3> flux_cols;  // columns of kin I - Eshelby
  MatX dlx;         // 3 x N explicit dL/dX
};

ConfigFields config_fields(const MaterialModel& m, const Grid& g,
                           const CanonicalState& s) {
  const long n = g.node_count();
  const StateGeometry geo = state_geometry(m, g, s);
  ConfigFields out;
  out.pseudo = MatX::Zero(3, n);
  out.dlx = MatX::Zero(3, n);
  for (int d = 0; d < 3; ++d) out.flux_cols[d] = MatX::Zero(3, n);

  for (long j = 0; j < n; ++j) {
    const Rates rates = velocity_from_momenta(m, g.position(j), s.nu.col(j),
                                              s.p.col(j), s.mu.col(j), j);
    const StatePoint pt =
        state_point_at(m, g, s, geo, j, rates.xdot, rates.nudot);
    const DerivedPoint d = derived_fields(m, pt);

    // The configurational momentum contracts the raw (ambient) rate
    // gradient of chi, not the projected canonical momentum.
    const VecX mu_raw = d.rho0 * chi_rate_gradient(m, pt.nu, pt.nudot);
    out.pseudo.col(j) =
        pt.F.transpose() * d.momentum + pt.gradnu.transpose() * mu_raw;

    const double chi_val =
        value(m.chi(lift(pt.nu.eval()), lift(pt.nudot.eval())));
    const double kin =
        0.5 * d.rho0 * pt.xdot.squaredNorm() + d.rho0 * chi_val;
    const Mat3 flux = kin * Mat3::Identity() - d.eshelby;
    for (int c = 0; c < 3; ++c) out.flux_cols[c].col(j) = flux.col(c);

    out.dlx.col(j) = m.homogeneous ? Vec3::Zero()
                                   : explicit_material_force(m, pt);
  }
  return out;
}

}  // namespace

PseudomomentumResidual pseudomomentum_residual(const MaterialModel& m,
                                               const Grid& g,
                                               const CanonicalState& s0,
                                               const CanonicalState& s1,
                                               const CanonicalState& s2,
                                               double dt) {
  const ConfigFields f0 = config_fields(m, g, s0);
  const ConfigFields f1 = config_fields(m, g, s1);
  const ConfigFields f2 = config_fields(m, g, s2);

  const MatX div_flux = divergence(f1.flux_cols, g);

  PseudomomentumResidual out;
  const long n = g.node_count();
  out.residual = MatX::Zero(3, n);
  out.inhomogeneity = f1.dlx;
  for (long j = 0; j < n; ++j) {
    if (!g.interior(j)) continue;
    out.residual.col(j) = (f2.pseudo.col(j) - f0.pseudo.col(j)) / (2.0 * dt) -
                          div_flux.col(j) + f1.dlx.col(j);
  }
  return out;
}

VecX substructural_consistency(const MaterialModel& m, const Grid& g,
                               const CanonicalState& s1) {
  const long n = g.node_count();
  const int k = m.manifold.ambient_dim;
  const StateGeometry geo1 = state_geometry(m, g, s1);

  // Two assemblies of the same balance through genuinely different paths:
  // one from the named constitutive pieces (dchi/dnu, z, beta, S of the
  // derived-field sweep), one from derivatives of the whole Lagrangian
  // density taken in single seeded evaluations. The time-derivative term is
  // common to both, so it cancels from the gap.
  std::array<MatX, 3> s_named, s_whole;
  for (int d = 0; d < 3; ++d) {
    s_named[d] = MatX::Zero(k, n);
    s_whole[d] = MatX::Zero(k, n);
  }
  MatX named = MatX::Zero(k, n), dnu_whole = MatX::Zero(k, n);
  for (long j = 0; j < n; ++j) {
    const Rates r = velocity_from_momenta(m, g.position(j), s1.nu.col(j),
                                          s1.p.col(j), s1.mu.col(j), j);
    const StatePoint pt =
        state_point_at(m, g, s1, geo1, j, r.xdot, r.nudot);
    const DerivedPoint d = derived_fields(m, pt);
    for (int c = 0; c < 3; ++c) s_named[c].col(j) = d.microstress.col(c);

    DualArgs a = lift_args(pt);
    VecX dchi_dnu(k);
    for (int i = 0; i < k; ++i) {
      a.nu(i).d = 1.0;
      dchi_dnu(i) = tangent(m.chi(a.nu, a.nudot));
      dnu_whole(i, j) = tangent(lagrangian_dual(m, a));
      a.nu(i).d = 0.0;
    }
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < 3; ++c) {
        a.gradnu(i, c).d = 1.0;
        s_whole[c](i, j) = -tangent(lagrangian_dual(m, a));
        a.gradnu(i, c).d = 0.0;
      }
    named.col(j) = -d.rho0 * dchi_dnu - d.self_force -
                   d.rho0 * d.substructural_force;
  }
  const MatX div_named = divergence(s_named, g);
  const MatX div_whole = divergence(s_whole, g);

  VecX gap = VecX::Zero(n);
  for (long j = 0; j < n; ++j) {
    if (!g.interior(j)) continue;
    const VecX assembled = named.col(j) - div_named.col(j);
    const VecX lagrange = -dnu_whole.col(j) - div_whole.col(j);
    gap(j) = (assembled - lagrange).norm();
  }
  return gap;
}

}  // namespace multifield
