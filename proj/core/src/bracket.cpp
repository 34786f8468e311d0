#include "multifield/bracket.hpp"

#include <cmath>
#include <vector>

#include "multifield/errors.hpp"

namespace multifield {

namespace {

std::vector<char> dirichlet_mask(const Grid& g) {
  std::vector<char> mask(static_cast<size_t>(g.node_count()), 0);
  for (const Grid::BoundaryNode& bn : g.boundary_nodes())
    if (bn.tag == FaceTag::Dirichlet) mask[static_cast<size_t>(bn.node)] = 1;
  return mask;
}

}  // namespace

double bracket(const FunctionalSpec& F, const FunctionalSpec& G,
               const MaterialModel& m, const Grid& g, const BoundarySpec& bc,
               const CanonicalState& s) {
  const VariationalDerivative vF = variational_derivative(F, m, g, bc, s);
  const VariationalDerivative vG = variational_derivative(G, m, g, bc, s);
  const std::vector<char> mask = dirichlet_mask(g);
  const double vol = g.cell_volume();

  double acc = 0.0;
  for (long j = 0; j < g.node_count(); ++j) {
    if (mask[static_cast<size_t>(j)]) continue;
    acc += (vF.dx.col(j).dot(vG.dp.col(j)) - vG.dx.col(j).dot(vF.dp.col(j)) +
            vF.dnu.col(j).dot(vG.dmu.col(j)) -
            vG.dnu.col(j).dot(vF.dmu.col(j))) *
           vol;
  }
  for (size_t t = 0; t < vF.traces.size(); ++t) {
    const NaturalTrace& trF = vF.traces[t];
    const NaturalTrace& trG = vG.traces[t];
    const long j = trF.node;
    if (mask[static_cast<size_t>(j)]) continue;
    acc += (trG.tx.dot(vF.dp.col(j)) - trF.tx.dot(vG.dp.col(j)) +
            trG.tnu.dot(vF.dmu.col(j)) - trF.tnu.dot(vG.dmu.col(j))) *
           g.face_area(trF.axis);
  }
  return acc;
}

double bracket_rate_gap(const FunctionalSpec& F, const MaterialModel& m,
                        const Grid& g, const BoundarySpec& bc,
                        const CanonicalState& s0, const CanonicalState& s1,
                        const CanonicalState& s2, double dt) {
  const FunctionalSpec H = hamiltonian_functional();
  const double fdot = (evaluate_functional(F, m, g, bc, s2) -
                       evaluate_functional(F, m, g, bc, s0)) /
                      (2.0 * dt);
  return std::abs(fdot - bracket(F, H, m, g, bc, s1));
}

QuadraticForm bracket_form(const QuadraticForm& f, const QuadraticForm& g,
                           int k) {
  const int dim = 6 + 2 * k;
  auto bvec = [dim](const QuadraticForm& q) {
    if (!q.b.size()) return VecX(VecX::Zero(dim));
    if (q.b.size() != dim)
      throw FunctionalClassError("bracket_form: operand sized for a "
                                 "different order-parameter dimension");
    return q.b;
  };
  auto amat = [dim](const QuadraticForm& q) {
    if (!q.A.size()) return MatX(MatX::Zero(dim, dim));
    if (q.A.rows() != dim || q.A.cols() != dim)
      throw FunctionalClassError("bracket_form: operand sized for a "
                                 "different order-parameter dimension");
    return q.A;
  };
  const VecX bf = bvec(f), bg = bvec(g);
  const MatX Af = amat(f), Ag = amat(g);
  const MatX J = poisson_bivector(k);

  QuadraticForm out;
  out.c = bf.dot(J * bg);
  out.b = Af * (J * bg) - Ag * (J * bf);
  const MatX M = Af * J * Ag;  // (A_f J A_g)^T = -A_g J A_f
  out.A = M + M.transpose();
  return out;
}

double jacobi_residual(const FunctionalSpec& F, const FunctionalSpec& G,
                       const FunctionalSpec& K, const MaterialModel& m,
                       const Grid& g, const BoundarySpec& bc,
                       const CanonicalState& s) {
  for (const FunctionalSpec* spec : {&F, &G, &K})
    if (!spec->form)
      throw FunctionalClassError(
          "jacobi_residual needs Linear or Quadratic functionals with "
          "explicit forms; '" +
          spec->name + "' carries none");
  if (!m.manifold.flat())
    throw FunctionalClassError(
        "jacobi_residual requires a flat order-parameter manifold; tangent "
        "projection on '" +
        m.manifold.name + "' makes the bracket coefficients state-"
        "dependent");
  for (int axis = 0; axis < g.dim; ++axis)
    if (!g.periodic_axis(axis))
      throw FunctionalClassError(
          "jacobi_residual requires a fully periodic grid");

  const int k = m.manifold.ambient_dim;
  auto inner = [&](const FunctionalSpec& a, const FunctionalSpec& b) {
    return from_form("{" + a.name + "," + b.name + "}",
                     bracket_form(*a.form, *b.form, k), k);
  };
  return bracket(F, inner(G, K), m, g, bc, s) +
         bracket(G, inner(K, F), m, g, bc, s) +
         bracket(K, inner(F, G), m, g, bc, s);
}

double momentum_pairing_gap(const MaterialModel& m, const Grid& g,
                            const BoundarySpec& bc, const CanonicalState& s,
                            const Vec3& v) {
  const RhsResult rhs = hamilton_rhs(m, g, bc, s);
  double engine = 0.0;
  for (long j = 0; j < g.node_count(); ++j)
    engine += rhs.pdot.col(j).dot(v);
  engine *= g.cell_volume();
  const double br = bracket(linear_momentum_functional(v),
                            hamiltonian_functional(), m, g, bc, s);
  return std::abs(br - engine);
}

double moment_map_pairing_gap(const MaterialModel& m, const Grid& g,
                              const BoundarySpec& bc,
                              const CanonicalState& s, const VecX& qdot) {
  if (!m.action)
    throw ConfigError("moment_map_pairing_gap: model '" + m.id +
                      "' has no group action");
  const RhsResult rhs = hamilton_rhs(m, g, bc, s);
  double engine = 0.0;
  for (long j = 0; j < g.node_count(); ++j) {
    const VecX xi = generator_value(*m.action, s.nu.col(j), qdot);
    const VecX dxi = generator_nu_derivative(*m.action, s.nu.col(j), qdot,
                                             rhs.nudot.col(j));
    engine += rhs.mudot.col(j).dot(xi) + s.mu.col(j).dot(dxi);
  }
  engine *= g.cell_volume();
  const double br = bracket(moment_map_functional(*m.action, qdot),
                            hamiltonian_functional(), m, g, bc, s);
  return std::abs(br - engine);
}

}  // namespace multifield
