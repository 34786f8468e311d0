#include "multifield/symmetry.hpp"

#include "multifield/errors.hpp"
#include "multifield/group_action.hpp"

namespace multifield {

namespace {

// Jacobian of a dual vector field at a point, one seeded evaluation per
// column.
Mat3 field_jacobian(const std::function<DVec3(const DVec3&)>& f,
                    const Vec3& at) {
  Mat3 jac;
  DVec3 a = lift(at);
  for (int j = 0; j < 3; ++j) {
    a(j).d = 1.0;
    const DVec3 out = f(a);
    for (int i = 0; i < 3; ++i) jac(i, j) = out(i).d;
    a(j).d = 0.0;
  }
  return jac;
}

Vec3 field_value(const std::function<DVec3(const DVec3&)>& f, const Vec3& at) {
  return values(f(lift(at)));
}

// Directional derivative of the field along dir at `at`.
Vec3 field_directional(const std::function<DVec3(const DVec3&)>& f,
                       const Vec3& at, const Vec3& dir) {
  DVec3 a;
  for (int i = 0; i < 3; ++i) a(i) = Dual(at(i), dir(i));
  return tangents(f(a));
}

}  // namespace

SymmetrySpec spatial_translation(const Vec3& c) {
  SymmetrySpec s;
  s.name = "translation";
  s.v_field = [c](const DVec3&) { return lift(c); };
  return s;
}

SymmetrySpec spatial_rotation(const Vec3& qdot, const Vec3& x0) {
  SymmetrySpec s;
  s.name = "rotation";
  s.x0 = x0;
  s.v_field = [qdot, x0](const DVec3& x) {
    DVec3 r = x - lift(x0);
    DVec3 out;
    out(0) = qdot(1) * r(2) - qdot(2) * r(1);
    out(1) = qdot(2) * r(0) - qdot(0) * r(2);
    out(2) = qdot(0) * r(1) - qdot(1) * r(0);
    return out;
  };
  s.algebra_dir = qdot;
  return s;
}

SymmetrySpec referential_translation(const Vec3& c) {
  SymmetrySpec s;
  s.name = "referential-translation";
  s.w_field = [c](const DVec3&) { return lift(c); };
  return s;
}

SymmetrySpec referential_rotation(const Vec3& qdot, const Vec3& X0) {
  SymmetrySpec s;
  s.name = "referential-rotation";
  s.X0 = X0;
  s.w_field = [qdot, X0](const DVec3& X) {
    DVec3 r = X - lift(X0);
    DVec3 out;
    out(0) = qdot(1) * r(2) - qdot(2) * r(1);
    out(1) = qdot(2) * r(0) - qdot(0) * r(2);
    out(2) = qdot(0) * r(1) - qdot(1) * r(0);
    return out;
  };
  return s;
}

SymmetrySpec isochoric_referential_field(
    std::function<DVec3(const DVec3& X)> potential) {
  SymmetrySpec s;
  s.name = "isochoric-field";
  // w = curl A evaluated through the dual Jacobian of the potential. Taking
  // the curl of anything gives Div w = 0 identically, which is the
  // hypothesis the referential family must satisfy exactly.
  // Differentiating the potential inside a dual-valued context would need
  // second-order numbers, so the curl is formed by central differences over
  // dual values; the outer seed rides along untouched.
  s.w_field = [pot = std::move(potential)](const DVec3& X) {
    DMat3 jac;
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      DVec3 hi = X, lo = X;
      hi(j) += h;
      lo(j) -= h;
      const DVec3 fp = pot(hi), fm = pot(lo);
      for (int i = 0; i < 3; ++i) jac(i, j) = (fp(i) - fm(i)) / (2.0 * h);
    }
    DVec3 w;
    w(0) = jac(2, 1) - jac(1, 2);
    w(1) = jac(0, 2) - jac(2, 0);
    w(2) = jac(1, 0) - jac(0, 1);
    return w;
  };
  return s;
}

double referential_divergence(const SymmetrySpec& sym, const Vec3& X) {
  if (!sym.w_field) return 0.0;
  return field_jacobian(sym.w_field, X).trace();
}

double invariance_defect(const MaterialModel& m, const SymmetrySpec& sym,
                         const StatePoint& sp) {
  double defect = 0.0;

  if (sym.w_field) {
    const Vec3 w = field_value(sym.w_field, sp.X);
    const Mat3 gw = field_jacobian(sym.w_field, sp.X);
    DualArgs a = lift_args(sp);
    const Mat3 fgw = sp.F * gw;           // d/ds of F(I+s gw)^-1 is -F gw
    const MatX ggw = sp.gradnu * gw;      // same for the nu gradient
    for (int i = 0; i < 3; ++i) a.X(i).d = w(i);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a.F(i, j).d = -fgw(i, j);
    for (int i = 0; i < a.gradnu.rows(); ++i)
      for (int j = 0; j < 3; ++j) a.gradnu(i, j).d = -ggw(i, j);
    defect += tangent(lagrangian_dual(m, a));
  }

  if (sym.v_field) {
    const Vec3 v = field_value(sym.v_field, sp.x);
    const Mat3 gv = field_jacobian(sym.v_field, sp.x);
    const Vec3 dv_xdot = field_directional(sym.v_field, sp.x, sp.xdot);
    DualArgs a = lift_args(sp);
    const Mat3 gvF = gv * sp.F;
    for (int i = 0; i < 3; ++i) a.x(i).d = v(i);
    for (int i = 0; i < 3; ++i) a.xdot(i).d = dv_xdot(i);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a.F(i, j).d = gvF(i, j);
    defect += tangent(lagrangian_dual(m, a));
  }

  if (sym.algebra_dir.size() > 0) {
    if (!m.action)
      throw ConfigError("symmetry '" + sym.name +
                        "' needs a group action on model '" + m.id + "'");
    const VecX xi = generator_value(*m.action, sp.nu, sym.algebra_dir);
    const VecX dxi_nudot =
        generator_nu_derivative(*m.action, sp.nu, sym.algebra_dir, sp.nudot);
    DualArgs a = lift_args(sp);
    for (int i = 0; i < xi.size(); ++i) {
      a.nu(i).d = xi(i);
      a.nudot(i).d = dxi_nudot(i);
    }
    for (int j = 0; j < 3; ++j) {
      const VecX dxi_col = generator_nu_derivative(*m.action, sp.nu,
                                                   sym.algebra_dir,
                                                   sp.gradnu.col(j));
      for (int i = 0; i < xi.size(); ++i) a.gradnu(i, j).d = dxi_col(i);
    }
    defect += tangent(lagrangian_dual(m, a));
  }

  return defect;
}

NoetherCurrent noether_current(const MaterialModel& m, const SymmetrySpec& sym,
                               const Grid& g, const CanonicalState& s) {
  if (sym.algebra_dir.size() > 0 && !m.action)
    throw ConfigError("symmetry '" + sym.name +
                      "' needs a group action on model '" + m.id + "'");
  const long n = g.node_count();
  const int k = m.manifold.ambient_dim;
  const StateGeometry geo = state_geometry(m, g, s);

  NoetherCurrent out;
  out.Q = VecX::Zero(n);
  out.flux = MatX::Zero(3, n);

  for (long j = 0; j < n; ++j) {
    const Rates rates = velocity_from_momenta(m, g.position(j), s.nu.col(j),
                                              s.p.col(j), s.mu.col(j), j);
    const StatePoint pt =
        state_point_at(m, g, s, geo, j, rates.xdot, rates.nudot);
    const DerivedPoint d = derived_fields(m, pt);

    const Vec3 w = sym.w_field ? field_value(sym.w_field, pt.X) : Vec3::Zero();
    const Vec3 v = sym.v_field ? field_value(sym.v_field, pt.x) : Vec3::Zero();
    const VecX xi = sym.algebra_dir.size() > 0
                        ? generator_value(*m.action, pt.nu, sym.algebra_dir)
                        : VecX::Zero(k);

    const Vec3 vx = v - pt.F * w;
    const VecX vnu = xi - pt.gradnu * w;

    out.Q(j) = d.momentum.dot(vx) + d.micro_momentum.dot(vnu);
    // dL/dF = -P and dL/d(gradnu) = -S in the flux.
    out.flux.col(j) = d.lagrangian * w - d.piola.transpose() * vx -
                      d.microstress.transpose() * vnu;
  }
  return out;
}

VecX noether_residual(const MaterialModel& m, const SymmetrySpec& sym,
                      const Grid& g, const CanonicalState& s0,
                      const CanonicalState& s1, const CanonicalState& s2,
                      double dt) {
  const NoetherCurrent c0 = noether_current(m, sym, g, s0);
  const NoetherCurrent c1 = noether_current(m, sym, g, s1);
  const NoetherCurrent c2 = noether_current(m, sym, g, s2);

  const std::array<MatX, 3> gflux = gradient(c1.flux, g);
  VecX res = VecX::Zero(g.node_count());
  for (long j = 0; j < g.node_count(); ++j) {
    if (!g.interior(j)) continue;
    double div = 0.0;
    for (int d = 0; d < g.dim; ++d) div += gflux[d](d, j);
    res(j) = (c2.Q(j) - c0.Q(j)) / (2.0 * dt) + div;
  }
  return res;
}

}  // namespace multifield
