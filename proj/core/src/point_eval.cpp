#include "multifield/point_eval.hpp"

#include <cmath>
#include <string>

#include "multifield/errors.hpp"

namespace multifield {

StatePoint zero_state(const MaterialModel& m) {
  const int k = m.manifold.ambient_dim;
  StatePoint s;
  s.nu = VecX::Zero(k);
  s.nudot = VecX::Zero(k);
  s.gradnu = MatX::Zero(k, 3);
  if (!m.manifold.flat()) s.nu = m.manifold.project(VecX::Unit(k, 0));
  return s;
}

void validate_state(const MaterialModel& m, const StatePoint& s, double tol) {
  const int k = m.manifold.ambient_dim;
  if (s.nu.size() != k || s.nudot.size() != k || s.gradnu.rows() != k ||
      s.gradnu.cols() != 3)
    throw ConfigError("state dimensions do not match the model manifold");
  if (!(s.F.determinant() > 0.0))
    throw ConfigError("state has non-positive det F");
  if (constraint_violation(m.manifold, s.nu) > tol)
    throw ConfigError("order parameter violates the manifold constraint");
  if (tangency_defect(m.manifold, s.nu, s.nudot) > tol)
    throw ConfigError("order-parameter rate is not tangent");
}

DualArgs lift_args(const StatePoint& s) {
  DualArgs a;
  a.X = lift(s.X);
  a.x = lift(s.x);
  a.xdot = lift(s.xdot);
  a.F = lift(s.F);
  a.nu = lift(s.nu);
  a.nudot = lift(s.nudot);
  a.gradnu = lift(s.gradnu);
  return a;
}

Dual lagrangian_dual(const MaterialModel& m, const DualArgs& a) {
  const Dual rho = m.rho0(a.X);
  Dual l = 0.5 * rho * sqnorm(a.xdot) + rho * m.chi(a.nu, a.nudot) -
           rho * m.e(a.X, a.F, a.nu, a.gradnu);
  if (m.has_w()) l -= rho * m.w(a.x, a.nu);
  return l;
}

double lagrangian_density(const MaterialModel& m, const StatePoint& s) {
  validate_state(m, s);
  const double l = value(lagrangian_dual(m, lift_args(s)));
  if (!std::isfinite(l)) throw EvalError("non-finite Lagrangian", "lagrangian");
  return l;
}

namespace {

void check_finite(double v, const char* name, int i = -1, int j = -1) {
  if (std::isfinite(v)) return;
  std::string entry = name;
  if (i >= 0) {
    entry += "(" + std::to_string(i);
    if (j >= 0) entry += "," + std::to_string(j);
    entry += ")";
  }
  throw EvalError("non-finite constitutive derivative: " + entry, entry);
}

}  // namespace

DerivedPoint derived_fields(const MaterialModel& m, const StatePoint& s) {
  validate_state(m, s);
  const int k = m.manifold.ambient_dim;
  DerivedPoint d;
  d.microstress = MatX::Zero(k, 3);
  d.self_force = VecX::Zero(k);
  d.substructural_force = VecX::Zero(k);
  d.micro_momentum = VecX::Zero(k);

  DualArgs a = lift_args(s);
  const double rho = value(m.rho0(a.X));
  d.rho0 = rho;
  d.lagrangian = value(lagrangian_dual(m, a));
  check_finite(d.lagrangian, "lagrangian");

  // P = -dL/dF and S = -dL/d(gradnu) reduce to rho0 de/dF, rho0 de/d(gradnu).
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a.F(i, j).d = 1.0;
      d.piola(i, j) = rho * tangent(m.e(a.X, a.F, a.nu, a.gradnu));
      a.F(i, j).d = 0.0;
      check_finite(d.piola(i, j), "piola", i, j);
    }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 3; ++j) {
      a.gradnu(i, j).d = 1.0;
      d.microstress(i, j) = rho * tangent(m.e(a.X, a.F, a.nu, a.gradnu));
      a.gradnu(i, j).d = 0.0;
      check_finite(d.microstress(i, j), "microstress", i, j);
    }

  for (int i = 0; i < k; ++i) {
    a.nu(i).d = 1.0;
    d.self_force(i) = -rho * tangent(m.e(a.X, a.F, a.nu, a.gradnu));
    if (m.has_w()) d.substructural_force(i) = -tangent(m.w(a.x, a.nu));
    a.nu(i).d = 0.0;
    check_finite(d.self_force(i), "self_force", i);
    check_finite(d.substructural_force(i), "substructural_force", i);
  }
  if (m.has_w()) {
    for (int i = 0; i < 3; ++i) {
      a.x(i).d = 1.0;
      d.body_force(i) = -tangent(m.w(a.x, a.nu));
      a.x(i).d = 0.0;
      check_finite(d.body_force(i), "body_force", i);
    }
  }

  d.momentum = rho * s.xdot;
  VecX mu_raw(k);
  for (int i = 0; i < k; ++i) {
    a.nudot(i).d = 1.0;
    mu_raw(i) = rho * tangent(m.chi(a.nu, a.nudot));
    a.nudot(i).d = 0.0;
    check_finite(mu_raw(i), "micro_momentum", i);
  }
  d.micro_momentum = m.manifold.tangent_projector(s.nu) * mu_raw;

  const double chi = value(m.chi(a.nu, a.nudot));
  d.kappa = s.nudot.dot(mu_raw) / rho - chi;
  d.energy_density =
      d.momentum.dot(s.xdot) + mu_raw.dot(s.nudot) - d.lagrangian;

  const double e = value(m.e(a.X, a.F, a.nu, a.gradnu));
  const double w = m.has_w() ? value(m.w(a.x, a.nu)) : 0.0;
  d.eshelby = rho * (e + w) * Mat3::Identity() - s.F.transpose() * d.piola -
              s.gradnu.transpose() * d.microstress;
  return d;
}

double kinetic_energy(const MaterialModel& m, const VecX& nu,
                      const VecX& nudot) {
  const VecX g = chi_rate_gradient(m, nu, nudot);
  const double chi = value(m.chi(lift(nu), lift(nudot)));
  return nudot.dot(g) - chi;
}

Rates velocity_from_momenta(const MaterialModel& m, const Vec3& X,
                            const VecX& nu, const Vec3& p, const VecX& mu,
                            long node) {
  const double rho = value(m.rho0(lift(X)));
  Rates r;
  r.xdot = p / rho;
  r.nudot = invert_micro_momentum(m, rho, nu, mu, node);
  return r;
}

double hamiltonian_density(const MaterialModel& m, const Vec3& X, const Vec3& x,
                           const Vec3& p, const Mat3& F, const VecX& nu,
                           const VecX& mu, const MatX& gradnu) {
  const Rates r = velocity_from_momenta(m, X, nu, p, mu);
  StatePoint s;
  s.X = X;
  s.x = x;
  s.xdot = r.xdot;
  s.F = F;
  s.nu = nu;
  s.nudot = r.nudot;
  s.gradnu = gradnu;
  const double l = value(lagrangian_dual(m, lift_args(s)));
  return p.dot(r.xdot) + mu.dot(r.nudot) - l;
}

HamiltonianPartials hamiltonian_partials(const MaterialModel& m, const Vec3& X,
                                         const Vec3& x, const Vec3& p,
                                         const Mat3& F, const VecX& nu,
                                         const VecX& mu, const MatX& gradnu,
                                         long node) {
  const int k = m.manifold.ambient_dim;
  HamiltonianPartials hp;
  hp.rates = velocity_from_momenta(m, X, nu, p, mu, node);

  StatePoint s;
  s.X = X;
  s.x = x;
  s.xdot = hp.rates.xdot;
  s.F = F;
  s.nu = nu;
  s.nudot = hp.rates.nudot;
  s.gradnu = gradnu;
  DualArgs a = lift_args(s);

  const double l = value(lagrangian_dual(m, a));
  hp.density = p.dot(hp.rates.xdot) + mu.dot(hp.rates.nudot) - l;

  // Envelope relations: at the inverted rates, dH/d(slot) = -dL/d(slot) for
  // every configuration slot, while the rate dependence drops out.
  for (int i = 0; i < 3; ++i) {
    a.x(i).d = 1.0;
    hp.dx(i) = -tangent(lagrangian_dual(m, a));
    a.x(i).d = 0.0;
    a.X(i).d = 1.0;
    hp.dX(i) = -tangent(lagrangian_dual(m, a));
    a.X(i).d = 0.0;
  }
  hp.dnu = VecX::Zero(k);
  for (int i = 0; i < k; ++i) {
    a.nu(i).d = 1.0;
    hp.dnu(i) = -tangent(lagrangian_dual(m, a));
    a.nu(i).d = 0.0;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a.F(i, j).d = 1.0;
      hp.dF(i, j) = -tangent(lagrangian_dual(m, a));
      a.F(i, j).d = 0.0;
    }
  hp.dgradnu = MatX::Zero(k, 3);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 3; ++j) {
      a.gradnu(i, j).d = 1.0;
      hp.dgradnu(i, j) = -tangent(lagrangian_dual(m, a));
      a.gradnu(i, j).d = 0.0;
    }
  return hp;
}

Mat3 eshelby_tensor(const MaterialModel& m, const StatePoint& s) {
  return derived_fields(m, s).eshelby;
}

}  // namespace multifield
