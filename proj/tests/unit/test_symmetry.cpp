#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "multifield/identities.hpp"
#include "multifield/report.hpp"
#include "multifield/symmetry.hpp"

using namespace multifield;

TEST_CASE("curl-generated referential fields are divergence free") {
  SymmetrySpec sym = isochoric_referential_field([](const DVec3& X) {
    DVec3 A;
    A(0) = sin(X(1)) * X(2);
    A(1) = X(0) * X(0) * X(2);
    A(2) = exp(0.3 * X(0)) + X(1) * X(1) * X(1);
    return A;
  });
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    Vec3 X(u(rng), u(rng), u(rng));
    CHECK(std::abs(referential_divergence(sym, X)) <= 1e-9);
  }
}

TEST_CASE("translation invariance and its deliberate breaking") {
  std::mt19937_64 rng(4);
  const Vec3 c(0.3, -0.7, 0.2);

  SUBCASE("M1 without external potential is translation invariant") {
    MaterialModel m = default_registry().make("M1");
    for (int t = 0; t < 5; ++t) {
      StatePoint sp = random_state_point(m, rng);
      CHECK(std::abs(invariance_defect(m, spatial_translation(c), sp)) <=
            1e-13);
    }
  }
  SUBCASE("an external spring breaks it by exactly -rho k x.c") {
    const double kw = 0.8;
    MaterialModel m = default_registry().make("M1", {{"w_spring", kw}});
    for (int t = 0; t < 5; ++t) {
      StatePoint sp = random_state_point(m, rng);
      const double expect = -1.0 * kw * sp.x.dot(c);
      CHECK(invariance_defect(m, spatial_translation(c), sp) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("referential translation defect equals the explicit material force") {
  MaterialModel m = default_registry().make("M1-rho-gradient");
  std::mt19937_64 rng(8);
  const Vec3 c(1.0, -0.5, 0.25);
  for (int t = 0; t < 5; ++t) {
    StatePoint sp = random_state_point(m, rng);
    const Vec3 f = explicit_material_force(m, sp);
    CHECK(invariance_defect(m, referential_translation(c), sp) ==
          doctest::Approx(f.dot(c)).epsilon(1e-10));
  }
}

TEST_CASE("joint spatial rotations are symmetries of the frame-neutral models") {
  std::mt19937_64 rng(15);
  const Vec3 qdot(0.4, 0.9, -0.3);
  const Vec3 x0(0.1, 0.0, -0.2);
  for (const char* id : {"M2-director", "iso-solid"}) {
    MaterialModel m = default_registry().make(id);
    for (int t = 0; t < 5; ++t) {
      StatePoint sp = random_state_point(m, rng);
      CHECK(std::abs(invariance_defect(m, spatial_rotation(qdot, x0), sp)) <=
            1e-12);
    }
  }
}

TEST_CASE("rotating placements without the order parameter is not a symmetry") {
  MaterialModel m = default_registry().make("iso-solid");
  std::mt19937_64 rng(16);
  SymmetrySpec bare = spatial_rotation(Vec3(0.0, 0.0, 1.0), Vec3::Zero());
  bare.algebra_dir = VecX();  // strip the group action
  StatePoint sp = random_state_point(m, rng);
  CHECK(std::abs(invariance_defect(m, bare, sp)) > 1e-3);
}

TEST_CASE("the translation current is momentum with stress flux") {
  MaterialModel m = default_registry().make("M1");
  Grid g = Grid::periodic(1, {8, 1, 1}, {2.0, 1.0, 1.0});
  CanonicalState s = smooth_state(m, g, 6, 0.2);
  const Vec3 c(1.0, 2.0, -1.0);

  NoetherCurrent cur = noether_current(m, spatial_translation(c), g, s);
  const StateGeometry geo = state_geometry(m, g, s);
  for (long j = 0; j < g.node_count(); ++j) {
    CHECK(cur.Q(j) == doctest::Approx(s.p.col(j).dot(c)).epsilon(1e-13));
    const Rates r = velocity_from_momenta(m, g.position(j), s.nu.col(j),
                                          s.p.col(j), s.mu.col(j), j);
    const StatePoint pt = state_point_at(m, g, s, geo, j, r.xdot, r.nudot);
    const DerivedPoint d = derived_fields(m, pt);
    const Vec3 expect = -d.piola.transpose() * c;
    CHECK((Vec3(cur.flux.col(j)) - expect).norm() <= 1e-13);
  }
}

TEST_CASE("Noether residuals shrink at second order under joint refinement") {
  struct Case {
    const char* model;
    SymmetrySpec sym;
  };
  const Case cases[] = {
      {"M1", spatial_translation(Vec3(1.0, 0.0, 0.0))},
      {"M2-director", spatial_rotation(Vec3(0.0, 0.0, 1.0), Vec3::Zero())},
  };
  BoundarySpec bc;
  for (const Case& cs : cases) {
    CAPTURE(cs.model);
    MaterialModel m = default_registry().make(cs.model);
    std::vector<double> hs, errs;
    for (int level = 0; level < 3; ++level) {
      const int n = 16 << level;
      const double dt = 2e-3 / (1 << level);
      Grid g = Grid::periodic(1, {n, 1, 1}, {2.0 * M_PI, 1.0, 1.0});
      CanonicalState s0 = smooth_state(m, g, 31, 0.1);
      CanonicalState s1 = step(m, g, bc, s0, dt);
      CanonicalState s2 = step(m, g, bc, s1, dt);
      VecX r = noether_residual(m, cs.sym, g, s0, s1, s2, dt);
      hs.push_back(g.h[0]);
      errs.push_back(std::sqrt(r.squaredNorm() * g.cell_volume()));
    }
    CHECK(fitted_order(hs, errs) >= 1.7);
  }
}
