#include "multifield/functional.hpp"

#include <cmath>

#include "multifield/errors.hpp"

namespace multifield {

namespace {

// Evaluate a density at plain (unseeded) values.
double density_value(const DensityFn& f, const Vec3& X, const Vec3& x,
                     const Vec3& p, const VecX& nu, const VecX& mu) {
  return value(f(lift(X), lift(x), lift(p), lift(nu), lift(mu)));
}

double form_value(const QuadraticForm& q, const VecX& u) {
  double v = q.c;
  if (q.b.size()) v += q.b.dot(u);
  if (q.A.size()) v += 0.5 * u.dot(q.A * u);
  return v;
}

VecX pack(const Vec3& x, const Vec3& p, const VecX& nu, const VecX& mu) {
  const int k = static_cast<int>(nu.size());
  VecX u(6 + 2 * k);
  u.segment(0, 3) = x;
  u.segment(3, 3) = p;
  u.segment(6, k) = nu;
  u.segment(6 + k, k) = mu;
  return u;
}

std::vector<NaturalTrace> zero_traces(const Grid& g, int k) {
  std::vector<NaturalTrace> out;
  for (const Grid::BoundaryNode& bn : g.boundary_nodes()) {
    if (bn.tag != FaceTag::Natural) continue;
    NaturalTrace tr;
    tr.node = bn.node;
    tr.axis = bn.axis;
    tr.side = bn.side;
    tr.tx = Vec3::Zero();
    tr.tnu = VecX::Zero(k);
    out.push_back(std::move(tr));
  }
  return out;
}

}  // namespace

FunctionalSpec hamiltonian_functional() {
  FunctionalSpec spec;
  spec.name = "hamiltonian";
  spec.cls = FunctionalClass::General;
  spec.model_hamiltonian = true;
  return spec;
}

FunctionalSpec from_form(const std::string& name, const QuadraticForm& form,
                         int k) {
  const int dim = 6 + 2 * k;
  if ((form.b.size() && form.b.size() != dim) ||
      (form.A.size() && (form.A.rows() != dim || form.A.cols() != dim)))
    throw FunctionalClassError("form '" + name +
                               "' sized for a different order-parameter "
                               "dimension");
  FunctionalSpec spec;
  spec.name = name;
  const bool quad = form.A.size() && form.A.cwiseAbs().maxCoeff() > 0.0;
  spec.cls = quad ? FunctionalClass::Quadratic : FunctionalClass::Linear;
  spec.form = form;
  spec.density = [form](const DVec3&, const DVec3& x, const DVec3& p,
                        const DVecX& nu, const DVecX& mu) {
    const int kk = static_cast<int>(nu.size());
    DVecX u(6 + 2 * kk);
    u.segment(0, 3) = x;
    u.segment(3, 3) = p;
    u.segment(6, kk) = nu;
    u.segment(6 + kk, kk) = mu;
    Dual v(form.c);
    if (form.b.size())
      for (int i = 0; i < u.size(); ++i) v += form.b(i) * u(i);
    if (form.A.size())
      for (int i = 0; i < u.size(); ++i)
        for (int j = 0; j < u.size(); ++j)
          v += 0.5 * form.A(i, j) * u(i) * u(j);
    return v;
  };
  return spec;
}

MatX poisson_bivector(int k) {
  const int dim = 6 + 2 * k;
  MatX J = MatX::Zero(dim, dim);
  J.block(0, 3, 3, 3) = Mat3::Identity();
  J.block(3, 0, 3, 3) = -Mat3::Identity();
  J.block(6, 6 + k, k, k) = MatX::Identity(k, k);
  J.block(6 + k, 6, k, k) = -MatX::Identity(k, k);
  return J;
}

QuadraticForm random_form(int k, std::mt19937& rng, FunctionalClass cls) {
  std::normal_distribution<double> n01(0.0, 1.0);
  const int dim = 6 + 2 * k;
  QuadraticForm q;
  q.c = n01(rng);
  q.b = VecX::Zero(dim);
  for (int i = 0; i < dim; ++i) q.b(i) = n01(rng);
  if (cls == FunctionalClass::Quadratic) {
    MatX r(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r(i, j) = n01(rng);
    q.A = 0.5 * (r + r.transpose());
  }
  return q;
}

FunctionalSpec linear_momentum_functional(const Vec3& v) {
  FunctionalSpec spec;
  spec.name = "linear-momentum";
  spec.cls = FunctionalClass::Linear;
  spec.density = [v](const DVec3&, const DVec3&, const DVec3& p,
                     const DVecX&, const DVecX&) {
    Dual out(0.0);
    for (int i = 0; i < 3; ++i) out += p(i) * v(i);
    return out;
  };
  return spec;
}

FunctionalSpec micro_momentum_functional(const VecX& xi) {
  FunctionalSpec spec;
  spec.name = "micro-momentum";
  spec.cls = FunctionalClass::Linear;
  spec.density = [xi](const DVec3&, const DVec3&, const DVec3&,
                      const DVecX&, const DVecX& mu) {
    Dual out(0.0);
    for (int i = 0; i < mu.size(); ++i) out += mu(i) * xi(i);
    return out;
  };
  return spec;
}

FunctionalSpec moment_map_functional(const GroupActionSpec& act,
                                     const VecX& qdot) {
  FunctionalSpec spec;
  spec.name = "moment-map";
  spec.cls = FunctionalClass::General;
  spec.density = [act, qdot](const DVec3&, const DVec3&, const DVec3&,
                             const DVecX& nu, const DVecX& mu) {
    const DVecX xi = act.generator(nu, qdot);
    Dual out(0.0);
    for (int i = 0; i < mu.size(); ++i) out += mu(i) * xi(i);
    return out;
  };
  return spec;
}

FunctionalSpec linear_combination(const std::string& name, double alpha,
                                  const FunctionalSpec& f, double beta,
                                  const FunctionalSpec& g) {
  if (f.model_hamiltonian || g.model_hamiltonian)
    throw FunctionalClassError(
        "linear_combination needs density functionals; '" +
        (f.model_hamiltonian ? f.name : g.name) + "' is the model "
        "Hamiltonian");
  FunctionalSpec spec;
  spec.name = name;
  spec.cls = std::max(f.cls, g.cls);  // Linear < Quadratic < General
  const DensityFn fd = f.density, gd = g.density;
  spec.density = [alpha, beta, fd, gd](const DVec3& X, const DVec3& x,
                                       const DVec3& p, const DVecX& nu,
                                       const DVecX& mu) {
    return alpha * fd(X, x, p, nu, mu) + beta * gd(X, x, p, nu, mu);
  };
  if (f.form && g.form && f.form->b.size() == g.form->b.size()) {
    QuadraticForm q;
    q.c = alpha * f.form->c + beta * g.form->c;
    q.b = alpha * f.form->b + beta * g.form->b;
    const bool fa = f.form->A.size() > 0, ga = g.form->A.size() > 0;
    if (fa || ga) {
      const int dim = static_cast<int>(q.b.size());
      q.A = MatX::Zero(dim, dim);
      if (fa) q.A += alpha * f.form->A;
      if (ga) q.A += beta * g.form->A;
    }
    spec.form = q;
  }
  return spec;
}

void check_functional_class(const FunctionalSpec& spec, int k,
                            unsigned seed) {
  if (spec.model_hamiltonian || spec.cls == FunctionalClass::General) return;
  if (!spec.density)
    throw FunctionalClassError("functional '" + spec.name +
                               "' has no density");
  std::mt19937 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  const int dim = 6 + 2 * k;
  auto draw_u = [&] {
    VecX u(dim);
    for (int i = 0; i < dim; ++i) u(i) = n01(rng);
    return u;
  };
  auto eval = [&](const Vec3& X, const VecX& u) {
    return density_value(spec.density, X, u.segment(0, 3), u.segment(3, 3),
                         u.segment(6, k), u.segment(6 + k, k));
  };
  for (int trial = 0; trial < 20; ++trial) {
    Vec3 X(n01(rng), n01(rng), n01(rng));
    const VecX u0 = draw_u();
    const VecX d1 = draw_u(), d2 = draw_u();
    const double scale =
        1.0 + std::abs(eval(X, u0)) + d1.norm() + d2.norm();
    if (spec.cls == FunctionalClass::Linear) {
      const double second = eval(X, u0 + d1 + d2) - eval(X, u0 + d1) -
                            eval(X, u0 + d2) + eval(X, u0);
      if (std::abs(second) > 1e-10 * scale)
        throw FunctionalClassError("functional '" + spec.name +
                                   "' declared Linear but has curvature");
    } else {
      const double third = eval(X, u0 + 3.0 * d1) -
                           3.0 * eval(X, u0 + 2.0 * d1) +
                           3.0 * eval(X, u0 + d1) - eval(X, u0);
      if (std::abs(third) > 1e-10 * scale * scale)
        throw FunctionalClassError("functional '" + spec.name +
                                   "' declared Quadratic but has cubic "
                                   "terms");
    }
    if (spec.form) {
      if (spec.form->b.size() != dim)
        throw FunctionalClassError("form on '" + spec.name +
                                   "' sized for a different "
                                   "order-parameter dimension");
      const double gap = std::abs(eval(X, u0) - form_value(*spec.form, u0));
      if (gap > 1e-10 * scale)
        throw FunctionalClassError("form on '" + spec.name +
                                   "' disagrees with its density");
    }
  }
}

VariationalDerivative variational_derivative(const FunctionalSpec& f,
                                             const MaterialModel& m,
                                             const Grid& g,
                                             const BoundarySpec& bc,
                                             const CanonicalState& s) {
  const long n = g.node_count();
  const int k = m.manifold.ambient_dim;
  VariationalDerivative vd;

  if (f.model_hamiltonian) {
    HamiltonParts parts = hamilton_parts(m, g, bc, s);
    vd.dx = -parts.pdot_bulk;
    vd.dp = parts.xdot;
    vd.dnu = -parts.mudot_bulk;
    vd.dmu = parts.nudot;
    if (!m.manifold.flat())
      for (long j = 0; j < n; ++j)
        vd.dnu.col(j) =
            (m.manifold.tangent_projector(s.nu.col(j)) * vd.dnu.col(j))
                .eval();
    vd.traces = std::move(parts.traces);
    return vd;
  }

  if (!f.density)
    throw FunctionalClassError("functional '" + f.name +
                               "' has no density");
  vd.dx = MatX::Zero(3, n);
  vd.dp = MatX::Zero(3, n);
  vd.dnu = MatX::Zero(k, n);
  vd.dmu = MatX::Zero(k, n);
  for (long j = 0; j < n; ++j) {
    DVec3 X = lift(Vec3(g.position(j)));
    DVec3 x = lift(Vec3(s.x.col(j)));
    DVec3 p = lift(Vec3(s.p.col(j)));
    DVecX nu = lift(VecX(s.nu.col(j)));
    DVecX mu = lift(VecX(s.mu.col(j)));
    for (int i = 0; i < 3; ++i) {
      x(i).d = 1.0;
      vd.dx(i, j) = tangent(f.density(X, x, p, nu, mu));
      x(i).d = 0.0;
      p(i).d = 1.0;
      vd.dp(i, j) = tangent(f.density(X, x, p, nu, mu));
      p(i).d = 0.0;
    }
    for (int i = 0; i < k; ++i) {
      nu(i).d = 1.0;
      vd.dnu(i, j) = tangent(f.density(X, x, p, nu, mu));
      nu(i).d = 0.0;
      mu(i).d = 1.0;
      vd.dmu(i, j) = tangent(f.density(X, x, p, nu, mu));
      mu(i).d = 0.0;
    }
    if (!m.manifold.flat()) {
      const MatX tp = m.manifold.tangent_projector(s.nu.col(j));
      vd.dnu.col(j) = (tp * vd.dnu.col(j)).eval();
      vd.dmu.col(j) = (tp * vd.dmu.col(j)).eval();
    }
  }
  vd.traces = zero_traces(g, k);
  (void)bc;
  return vd;
}

double evaluate_functional(const FunctionalSpec& f, const MaterialModel& m,
                           const Grid& g, const BoundarySpec& bc,
                           const CanonicalState& s) {
  if (f.model_hamiltonian) return total_energy(m, g, bc, s);
  if (!f.density)
    throw FunctionalClassError("functional '" + f.name +
                               "' has no density");
  double acc = 0.0;
  for (long j = 0; j < g.node_count(); ++j)
    acc += density_value(f.density, g.position(j), s.x.col(j), s.p.col(j),
                         s.nu.col(j), s.mu.col(j));
  return acc * g.cell_volume();
}

}  // namespace multifield
