#include <cmath>

#include "doctest.h"
#include "multifield/errors.hpp"
#include "multifield/legendre.hpp"
#include "multifield/material.hpp"
#include "multifield/point_eval.hpp"

using namespace multifield;

TEST_CASE("quadratic chi inverts in closed form") {
  MaterialModel m = default_registry().make("M1", {{"rho0", 2.0}});
  VecX nu = VecX::Zero(3);
  VecX mu(3);
  mu << 0.0, 3.0, 0.0;
  VecX nudot = invert_micro_momentum(m, 2.0, nu, mu);
  // mu = rho dchi/dnudot = rho nudot
  CHECK((nudot - mu / 2.0).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("quartic chi round trip against an exact-Jacobian Newton") {
  MaterialModel m = default_registry().make("quartic-chi");
  const double rho = 1.0;
  VecX nu = VecX::Zero(3);
  VecX mu(3);
  mu << 0.8, -0.4, 1.1;

  VecX nudot = invert_micro_momentum(m, rho, nu, mu);
  VecX back = rho * chi_rate_gradient(m, nu, nudot);
  CHECK((back - mu).norm() <= 1e-10);

  // independent Newton with the hand-written Jacobian
  // mu = rho |v|^2 v, J = rho (|v|^2 I + 2 v v^T)
  VecX v = mu;  // start somewhere sensible
  for (int it = 0; it < 60; ++it) {
    VecX r = rho * v.squaredNorm() * v - mu;
    MatX J = rho * (v.squaredNorm() * MatX::Identity(3, 3) +
                    2.0 * v * v.transpose());
    v -= J.fullPivLu().solve(r);
  }
  CHECK((nudot - v).norm() <= 1e-10);
}

TEST_CASE("sphere: inversion stays tangent and round-trips") {
  MaterialModel m = default_registry().make("M2-director");
  VecX nu(3);
  nu << 0.0, 0.0, 1.0;
  VecX mu(3);
  mu << 0.3, -0.2, 0.0;  // tangent at the north pole

  VecX nudot = invert_micro_momentum(m, 1.0, nu, mu);
  CHECK(std::abs(nudot.dot(nu)) <= 1e-12);
  CHECK((nudot - mu).norm() <= 1e-12);  // quadratic chi, rho = 1

  double kappa = kinetic_energy(m, nu, nudot);
  CHECK(kappa == doctest::Approx(0.5 * mu.squaredNorm()));
}

TEST_CASE("rates jointly from both momenta") {
  MaterialModel m = default_registry().make("M1", {{"rho0", 4.0}});
  Vec3 p(1.0, 0.0, -2.0);
  VecX mu(3);
  mu << 0.0, 2.0, 0.0;
  Rates r = velocity_from_momenta(m, Vec3::Zero(), VecX::Zero(3), p, mu);
  CHECK((r.xdot - p / 4.0).norm() <= 1e-14);
  CHECK((r.nudot - mu / 4.0).norm() <= 1e-14);
}

TEST_CASE("a rate-degenerate chi fails loudly") {
  MaterialModel m = default_registry().make("M1");
  // linear in nudot: the gradient cannot reach a generic mu
  m.chi = [](const DVecX&, const DVecX& nudot) { return nudot(0); };
  VecX mu(3);
  mu << 0.0, 1.0, 0.0;
  CHECK_THROWS_AS(invert_micro_momentum(m, 1.0, VecX::Zero(3), mu),
                  LegendreError);
}

TEST_CASE("dual-seeded inversion differentiates the inverse map") {
  MaterialModel m = default_registry().make("quartic-chi");
  VecX nu = VecX::Zero(3);
  VecX mu(3);
  mu << 0.6, 0.2, -0.9;

  // derivative of nudot(mu) along dmu, logicless finite difference check
  VecX dmu(3);
  dmu << 0.1, -0.3, 0.2;
  DVecX mu_d = lift(mu);
  for (int i = 0; i < 3; ++i) mu_d(i).d = dmu(i);
  DVecX nd = invert_micro_momentum_dual(m, Dual(1.0), lift(nu), mu_d);

  const double h = 1e-6;
  VecX plus = invert_micro_momentum(m, 1.0, nu, mu + h * dmu);
  VecX minus = invert_micro_momentum(m, 1.0, nu, mu - h * dmu);
  VecX fd = (plus - minus) / (2.0 * h);
  for (int i = 0; i < 3; ++i)
    CHECK(tangent(nd(i)) == doctest::Approx(fd(i)).epsilon(1e-6));
}
