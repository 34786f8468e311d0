#include <cmath>
#include <random>

#include "doctest.h"
#include "multifield/errors.hpp"
#include "multifield/material.hpp"
#include "multifield/point_eval.hpp"
#include "multifield/state.hpp"

using namespace multifield;

namespace {

// Central finite difference of the Lagrangian density along one seeded slot.
template <typename Bump>
double fd_slot(const MaterialModel& m, const StatePoint& s, Bump bump,
               double h = 1e-5) {
  StatePoint a = s, b = s;
  bump(a, +h);
  bump(b, -h);
  return (lagrangian_density(m, a) - lagrangian_density(m, b)) / (2.0 * h);
}

}  // namespace

TEST_CASE("pinned values for the M1 closures") {
  MaterialModel m = default_registry().make("M1");
  StatePoint s = zero_state(m);

  SUBCASE("uniaxial stretch energy") {
    s.F(0, 0) = 1.1;
    CHECK(lagrangian_density(m, s) == doctest::Approx(-0.005).epsilon(1e-14));
  }
  SUBCASE("simple shear Piola stress") {
    s.F(0, 1) = 1.1 - 1.0;  // F = I + 0.1 e1 (x) e2
    s.F(0, 1) = 0.1;
    DerivedPoint d = derived_fields(m, s);
    Mat3 expect = Mat3::Zero();
    expect(0, 1) = 0.1;
    CHECK((d.piola - expect).norm() <= 1e-14);
  }
  SUBCASE("order parameter self force") {
    s.nu << 1.0, 0.0, 0.0;
    DerivedPoint d = derived_fields(m, s);
    CHECK((d.self_force - VecX(Vec3(-1.0, 0.0, 0.0))).norm() <= 1e-14);
  }
  SUBCASE("micro momentum and kappa, quadratic chi") {
    s.nudot << 0.0, 2.0, 0.0;
    DerivedPoint d = derived_fields(m, s);
    CHECK((d.micro_momentum - VecX(Vec3(0.0, 2.0, 0.0))).norm() <= 1e-14);
    CHECK(d.kappa == doctest::Approx(2.0));
  }
  SUBCASE("configurational stress of a pure gradient state") {
    s.gradnu(0, 0) = 1.0;  // gradnu = e1 (x) e1
    DerivedPoint d = derived_fields(m, s);
    Mat3 expect = Mat3::Zero();
    expect.diagonal() << -0.5, 0.5, 0.5;
    CHECK((d.eshelby - expect).norm() <= 1e-14);
  }
}

TEST_CASE("quartic chi kappa at unit rate") {
  MaterialModel m = default_registry().make("quartic-chi");
  StatePoint s = zero_state(m);
  s.nudot << 1.0, 0.0, 0.0;
  DerivedPoint d = derived_fields(m, s);
  CHECK(d.kappa == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("hamiltonian density of a moving rest state") {
  MaterialModel m = default_registry().make("M1");
  double h = hamiltonian_density(m, Vec3::Zero(), Vec3::Zero(),
                                 Vec3(1.0, 0.0, 0.0), Mat3::Identity(),
                                 VecX::Zero(3), VecX::Zero(3),
                                 MatX::Zero(3, 3));
  CHECK(h == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("derived fields vs finite differences of L, random states") {
  std::mt19937_64 rng(7);
  for (const char* id : {"M1", "M2-director", "iso-solid"}) {
    MaterialModel m = default_registry().make(id);
    for (int trial = 0; trial < 10; ++trial) {
      StatePoint s = random_state_point(m, rng);
      DerivedPoint d = derived_fields(m, s);
      const double tol = 1e-6;

      // momentum slot
      for (int i = 0; i < 3; ++i) {
        double fd = fd_slot(m, s, [i](StatePoint& q, double h) {
          q.xdot(i) += h;
        });
        CHECK(d.momentum(i) ==
              doctest::Approx(fd).epsilon(tol).scale(1.0));
      }
      // Piola slot carries a minus sign: P = -dL/dF
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double fd = fd_slot(m, s, [i, j](StatePoint& q, double h) {
            q.F(i, j) += h;
          });
          CHECK(d.piola(i, j) ==
                doctest::Approx(-fd).epsilon(tol).scale(1.0));
        }
      // microstress: S = -dL/d(gradnu)
      const int k = m.manifold.ambient_dim;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < 3; ++j) {
          double fd = fd_slot(m, s, [i, j](StatePoint& q, double h) {
            q.gradnu(i, j) += h;
          });
          CHECK(d.microstress(i, j) ==
                doctest::Approx(-fd).epsilon(tol).scale(1.0));
        }
    }
  }
}

TEST_CASE("hamiltonian partials via the envelope relations") {
  // flat models: finite differences of H in x and nu at fixed momenta
  for (const char* id : {"M1", "quartic-chi"}) {
    MaterialModel m = default_registry().make(
        id, {{"w_spring", std::string(id) == "M1" ? 0.7 : 0.0}});
    std::mt19937_64 rng(11);
    StatePoint sp = random_state_point(m, rng);
    Vec3 p(0.4, -0.1, 0.9);
    VecX mu(3);
    mu << 0.5, 0.1, -0.3;

    HamiltonianPartials hp = hamiltonian_partials(
        m, sp.X, sp.x, p, sp.F, sp.nu, mu, sp.gradnu);

    const double h = 1e-6;
    for (int i = 0; i < 3; ++i) {
      Vec3 xp = sp.x, xm = sp.x;
      xp(i) += h;
      xm(i) -= h;
      double fd = (hamiltonian_density(m, sp.X, xp, p, sp.F, sp.nu, mu,
                                       sp.gradnu) -
                   hamiltonian_density(m, sp.X, xm, p, sp.F, sp.nu, mu,
                                       sp.gradnu)) /
                  (2.0 * h);
      CHECK(hp.dx(i) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
    for (int i = 0; i < 3; ++i) {
      VecX np = sp.nu, nm = sp.nu;
      np(i) += h;
      nm(i) -= h;
      double fd = (hamiltonian_density(m, sp.X, sp.x, p, sp.F, np, mu,
                                       sp.gradnu) -
                   hamiltonian_density(m, sp.X, sp.x, p, sp.F, nm, mu,
                                       sp.gradnu)) /
                  (2.0 * h);
      CHECK(hp.dnu(i) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
    // momentum-slot derivatives are the inverted rates
    CHECK((hp.rates.xdot - p / value(m.rho0(lift(sp.X)))).norm() <= 1e-12);
  }
}

TEST_CASE("state validation rejects inadmissible points") {
  MaterialModel m = default_registry().make("M2-director");
  StatePoint s = zero_state(m);
  CHECK_NOTHROW(validate_state(m, s));

  SUBCASE("off the manifold") {
    StatePoint bad = s;
    bad.nu *= 1.5;
    CHECK_THROWS_AS(validate_state(m, bad), ConfigError);
  }
  SUBCASE("rate sticking out of the tangent space") {
    StatePoint bad = s;
    bad.nudot = bad.nu;  // radial
    CHECK_THROWS_AS(validate_state(m, bad), ConfigError);
  }
  SUBCASE("orientation-reversing deformation") {
    StatePoint bad = s;
    bad.F(0, 0) = -1.0;
    CHECK_THROWS_AS(validate_state(m, bad), ConfigError);
  }
}
