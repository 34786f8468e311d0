#include "multifield/engine.hpp"

#include "multifield/errors.hpp"
#include "multifield/legendre.hpp"

namespace multifield {

Vec3 boundary_traction(const BoundarySpec& bc, double rho0, const Vec3& x) {
  if (!bc.surface_x_potential) return Vec3::Zero();
  Vec3 t;
  DVec3 xd = lift(x);
  for (int i = 0; i < 3; ++i) {
    xd(i).d = 1.0;
    t(i) = rho0 * tangent(bc.surface_x_potential(xd));
    xd(i).d = 0.0;
  }
  return t;
}

VecX boundary_microtraction(const BoundarySpec& bc, double rho0,
                            const VecX& nu) {
  const int k = static_cast<int>(nu.size());
  if (!bc.surface_nu_potential) return VecX::Zero(k);
  VecX t(k);
  DVecX nd = lift(nu);
  for (int i = 0; i < k; ++i) {
    nd(i).d = 1.0;
    t(i) = rho0 * tangent(bc.surface_nu_potential(nd));
    nd(i).d = 0.0;
  }
  return t;
}

StateGeometry state_geometry(const MaterialModel& m, const Grid& g,
                             const CanonicalState& s) {
  StateGeometry geo;
  // Difference the displacement, not the placement: the reference part of x
  // is not periodic (it sawtooths across a wrapped axis), so the stencil
  // must never see it. Adding the identity back analytically is exact on
  // bounded axes as well, since every stencil row reproduces linears.
  MatX u = s.x;
  for (long j = 0; j < g.node_count(); ++j) u.col(j) -= g.position(j);
  geo.gx = gradient(u, g);
  for (int d = 0; d < g.dim; ++d) geo.gx[d].row(d).array() += 1.0;
  geo.gnu = gradient(s.nu, g);
  // Covariant gradient: ambient stencil followed by tangent projection.
  if (!m.manifold.flat()) {
    for (long j = 0; j < g.node_count(); ++j) {
      const MatX tp = m.manifold.tangent_projector(s.nu.col(j));
      for (int d = 0; d < g.dim; ++d)
        geo.gnu[d].col(j) = tp * geo.gnu[d].col(j);
    }
  }
  return geo;
}

StatePoint state_point_at(const MaterialModel& m, const Grid& g,
                          const CanonicalState& s, const StateGeometry& geo,
                          long node, const Vec3& xdot, const VecX& nudot) {
  (void)m;
  StatePoint pt;
  pt.X = g.position(node);
  pt.x = s.x.col(node);
  pt.xdot = xdot;
  pt.F = deformation_at(geo.gx, g, node);
  pt.nu = s.nu.col(node);
  pt.nudot = nudot;
  pt.gradnu = tensor_at(geo.gnu, node);
  return pt;
}

namespace {

// Configuration-slot derivatives of the Hamiltonian density at one node,
// through the envelope relations dH/d(slot) = -dL/d(slot) at inverted rates.
// Each partial seeds only the closures that depend on its slot.
struct NodePartials {
  Vec3 dx = Vec3::Zero();
  VecX dnu;
  Mat3 piola = Mat3::Zero();
  MatX microstress;
};

NodePartials node_partials(const MaterialModel& m, const StatePoint& pt,
                           double rho) {
  const int k = m.manifold.ambient_dim;
  NodePartials np;
  np.dnu = VecX::Zero(k);
  np.microstress = MatX::Zero(k, 3);

  DualArgs a = lift_args(pt);
  if (m.has_w()) {
    for (int i = 0; i < 3; ++i) {
      a.x(i).d = 1.0;
      np.dx(i) = rho * tangent(m.w(a.x, a.nu));
      a.x(i).d = 0.0;
    }
  }
  for (int i = 0; i < k; ++i) {
    a.nu(i).d = 1.0;
    double t = rho * tangent(m.e(a.X, a.F, a.nu, a.gradnu)) -
               rho * tangent(m.chi(a.nu, a.nudot));
    if (m.has_w()) t += rho * tangent(m.w(a.x, a.nu));
    np.dnu(i) = t;
    a.nu(i).d = 0.0;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a.F(i, j).d = 1.0;
      np.piola(i, j) = rho * tangent(m.e(a.X, a.F, a.nu, a.gradnu));
      a.F(i, j).d = 0.0;
    }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 3; ++j) {
      a.gradnu(i, j).d = 1.0;
      np.microstress(i, j) = rho * tangent(m.e(a.X, a.F, a.nu, a.gradnu));
      a.gradnu(i, j).d = 0.0;
    }
  return np;
}

}  // namespace

HamiltonParts hamilton_parts(const MaterialModel& m, const Grid& g,
                             const BoundarySpec& bc, const CanonicalState& s) {
  const long n = g.node_count();
  const int k = m.manifold.ambient_dim;
  const StateGeometry geo = state_geometry(m, g, s);

  HamiltonParts out;
  out.xdot = MatX::Zero(3, n);
  out.nudot = MatX::Zero(k, n);

  std::array<MatX, 3> p_cols, s_cols;
  for (int d = 0; d < 3; ++d) {
    p_cols[d] = MatX::Zero(3, n);
    s_cols[d] = MatX::Zero(k, n);
  }
  MatX dx_field = MatX::Zero(3, n), dnu_field = MatX::Zero(k, n);
  std::vector<double> rho_field(n);

  for (long j = 0; j < n; ++j) {
    const Vec3 X = g.position(j);
    const double rho = value(m.rho0(lift(X)));
    rho_field[j] = rho;
    const Rates rates =
        velocity_from_momenta(m, X, s.nu.col(j), s.p.col(j), s.mu.col(j), j);
    out.xdot.col(j) = rates.xdot;
    out.nudot.col(j) = rates.nudot;

    const StatePoint pt =
        state_point_at(m, g, s, geo, j, rates.xdot, rates.nudot);
    const NodePartials np = node_partials(m, pt, rho);
    dx_field.col(j) = np.dx;
    dnu_field.col(j) = np.dnu;
    for (int d = 0; d < 3; ++d) {
      p_cols[d].col(j) = np.piola.col(d);
      s_cols[d].col(j) = np.microstress.col(d);
    }
  }

  out.pdot_bulk = divergence(p_cols, g) - dx_field;
  out.mudot_bulk = divergence(s_cols, g) - dnu_field;

  for (const auto& bn : g.boundary_nodes()) {
    if (bn.tag != FaceTag::Natural) continue;
    const long j = bn.node;
    const double sign = bn.side == 0 ? -1.0 : 1.0;
    NaturalTrace tr;
    tr.node = j;
    tr.axis = bn.axis;
    tr.side = bn.side;
    // Outward flux is sign * (stress column "axis").
    Vec3 flux;
    VecX microflux(k);
    for (int i = 0; i < 3; ++i) flux(i) = sign * p_cols[bn.axis](i, j);
    for (int i = 0; i < k; ++i) microflux(i) = sign * s_cols[bn.axis](i, j);
    tr.tx = boundary_traction(bc, rho_field[j], s.x.col(j)) - flux;
    tr.tnu = boundary_microtraction(bc, rho_field[j], s.nu.col(j)) - microflux;
    out.traces.push_back(tr);
  }
  return out;
}

RhsResult hamilton_rhs(const MaterialModel& m, const Grid& g,
                       const BoundarySpec& bc, const CanonicalState& s) {
  const long n = g.node_count();
  HamiltonParts parts = hamilton_parts(m, g, bc, s);

  RhsResult r;
  r.xdot = std::move(parts.xdot);
  r.nudot = std::move(parts.nudot);
  r.pdot = std::move(parts.pdot_bulk);
  r.mudot = std::move(parts.mudot_bulk);

  // Natural faces: penalty steering the boundary flux to the prescribed
  // traction; the weight 1/h makes the bracket's surface integrals and this
  // volume assembly two spellings of the same sum.
  for (const auto& tr : parts.traces) {
    r.pdot.col(tr.node) += tr.tx / g.h[tr.axis];
    r.mudot.col(tr.node) += tr.tnu / g.h[tr.axis];
  }

  // Tangent projection of the micro-momentum rate.
  if (!m.manifold.flat()) {
    for (long j = 0; j < n; ++j) {
      const MatX tp = m.manifold.tangent_projector(s.nu.col(j));
      r.mudot.col(j) = tp * r.mudot.col(j);
    }
  }

  // Dirichlet nodes are pinned.
  for (const auto& bn : g.boundary_nodes()) {
    if (bn.tag != FaceTag::Dirichlet) continue;
    r.xdot.col(bn.node).setZero();
    r.pdot.col(bn.node).setZero();
    r.nudot.col(bn.node).setZero();
    r.mudot.col(bn.node).setZero();
  }
  return r;
}

LagrangeAssembly lagrange_assembly(const MaterialModel& m, const Grid& g,
                                   const CanonicalState& s, const MatX& xdot,
                                   const MatX& nudot) {
  const long n = g.node_count();
  const int k = m.manifold.ambient_dim;
  const StateGeometry geo = state_geometry(m, g, s);

  LagrangeAssembly out;
  out.pdot = MatX::Zero(3, n);
  out.mudot = MatX::Zero(k, n);

  std::array<MatX, 3> p_cols, s_cols;
  for (int d = 0; d < 3; ++d) {
    p_cols[d] = MatX::Zero(3, n);
    s_cols[d] = MatX::Zero(k, n);
  }
  MatX body = MatX::Zero(3, n), dnu_l = MatX::Zero(k, n);

  for (long j = 0; j < n; ++j) {
    const StatePoint pt =
        state_point_at(m, g, s, geo, j, xdot.col(j), nudot.col(j));
    const DerivedPoint d = derived_fields(m, pt);
    for (int c = 0; c < 3; ++c) {
      p_cols[c].col(j) = d.piola.col(c);
      s_cols[c].col(j) = d.microstress.col(c);
    }
    body.col(j) = d.rho0 * d.body_force;

    // dL/dnu = rho0 dchi/dnu + z + rho0 beta
    DualArgs a = lift_args(pt);
    VecX dchi(k);
    for (int i = 0; i < k; ++i) {
      a.nu(i).d = 1.0;
      dchi(i) = tangent(m.chi(a.nu, a.nudot));
      a.nu(i).d = 0.0;
    }
    dnu_l.col(j) =
        d.rho0 * dchi + d.self_force + d.rho0 * d.substructural_force;
  }

  out.pdot = body + divergence(p_cols, g);
  out.mudot = dnu_l + divergence(s_cols, g);
  return out;
}

void apply_dirichlet(const MaterialModel& m, const Grid& g,
                     const BoundarySpec& bc, CanonicalState& s) {
  for (const auto& bn : g.boundary_nodes()) {
    if (bn.tag != FaceTag::Dirichlet) continue;
    const Vec3 X = g.position(bn.node);
    if (bc.xbar) s.x.col(bn.node) = bc.xbar(X);
    if (bc.nubar) s.nu.col(bn.node) = m.manifold.project(bc.nubar(X));
    s.p.col(bn.node).setZero();
    s.mu.col(bn.node).setZero();
  }
}

CanonicalState step(const MaterialModel& m, const Grid& g,
                    const BoundarySpec& bc, const CanonicalState& s,
                    double dt) {
  CanonicalState out = s;

  const RhsResult k1 = hamilton_rhs(m, g, bc, out);
  out.p += 0.5 * dt * k1.pdot;
  out.mu += 0.5 * dt * k1.mudot;

  // Drift with rates at the mid-step momenta, current configuration.
  for (long j = 0; j < g.node_count(); ++j) {
    const Rates rates = velocity_from_momenta(
        m, g.position(j), out.nu.col(j), out.p.col(j), out.mu.col(j), j);
    out.x.col(j) += dt * rates.xdot;
    out.nu.col(j) += dt * rates.nudot;
    if (!m.manifold.flat()) {
      out.nu.col(j) = m.manifold.project(out.nu.col(j));
      out.mu.col(j) =
          m.manifold.tangent_projector(out.nu.col(j)) * out.mu.col(j);
    }
  }
  apply_dirichlet(m, g, bc, out);

  const RhsResult k2 = hamilton_rhs(m, g, bc, out);
  out.p += 0.5 * dt * k2.pdot;
  out.mu += 0.5 * dt * k2.mudot;
  if (!m.manifold.flat()) {
    for (long j = 0; j < g.node_count(); ++j)
      out.mu.col(j) =
          m.manifold.tangent_projector(out.nu.col(j)) * out.mu.col(j);
  }
  apply_dirichlet(m, g, bc, out);
  out.time = s.time + dt;
  return out;
}

VecX hamiltonian_field(const MaterialModel& m, const Grid& g,
                       const CanonicalState& s) {
  const long n = g.node_count();
  const StateGeometry geo = state_geometry(m, g, s);
  VecX h(n);
  for (long j = 0; j < n; ++j) {
    const Mat3 f = deformation_at(geo.gx, g, j);
    const MatX gn = tensor_at(geo.gnu, j);
    h(j) = hamiltonian_density(m, g.position(j), s.x.col(j), s.p.col(j), f,
                               s.nu.col(j), s.mu.col(j), gn);
  }
  return h;
}

double total_energy(const MaterialModel& m, const Grid& g,
                    const BoundarySpec& bc, const CanonicalState& s) {
  double total = integrate(hamiltonian_field(m, g, s), g);
  for (const auto& bn : g.boundary_nodes()) {
    if (bn.tag != FaceTag::Natural) continue;
    const double rho = value(m.rho0(lift(g.position(bn.node))));
    double u = 0.0;
    if (bc.surface_x_potential)
      u += value(bc.surface_x_potential(lift(s.x.col(bn.node).eval())));
    if (bc.surface_nu_potential)
      u += value(bc.surface_nu_potential(lift(s.nu.col(bn.node).eval())));
    total -= rho * u * g.face_area(bn.axis);
  }
  return total;
}

namespace {

// h and its flux x_dot P + nu_dot S per node.
void energy_pointfields(const MaterialModel& m, const Grid& g,
                        const CanonicalState& s, VecX& h, MatX& flux) {
  const long n = g.node_count();
  const StateGeometry geo = state_geometry(m, g, s);
  h.resize(n);
  flux = MatX::Zero(3, n);
  for (long j = 0; j < n; ++j) {
    const Vec3 X = g.position(j);
    const Rates rates =
        velocity_from_momenta(m, X, s.nu.col(j), s.p.col(j), s.mu.col(j), j);
    const StatePoint pt =
        state_point_at(m, g, s, geo, j, rates.xdot, rates.nudot);
    const DerivedPoint d = derived_fields(m, pt);
    h(j) = d.energy_density;
    flux.col(j) = d.piola.transpose() * rates.xdot +
                  d.microstress.transpose() * rates.nudot;
  }
}

}  // namespace

VecX energy_balance_residual(const MaterialModel& m, const Grid& g,
                             const BoundarySpec& bc, const CanonicalState& s0,
                             const CanonicalState& s1, const CanonicalState& s2,
                             double dt) {
  (void)bc;
  const long n = g.node_count();
  VecX h0, h1, h2;
  MatX flux0, flux1, flux2;
  energy_pointfields(m, g, s0, h0, flux0);
  energy_pointfields(m, g, s1, h1, flux1);
  energy_pointfields(m, g, s2, h2, flux2);

  // Div of the flux vector field at the middle state.
  const std::array<MatX, 3> dflux = gradient(flux1, g);
  VecX res = VecX::Zero(n);
  for (long j = 0; j < n; ++j) {
    if (!g.interior(j)) continue;
    double div = 0.0;
    for (int d = 0; d < g.dim; ++d) div += dflux[d](d, j);
    res(j) = (h2(j) - h0(j)) / (2.0 * dt) - div;
  }
  return res;
}

}  // namespace multifield
