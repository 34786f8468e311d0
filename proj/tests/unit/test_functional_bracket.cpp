#include <cmath>
#include <random>

#include "doctest.h"
#include "multifield/bracket.hpp"
#include "multifield/errors.hpp"

using namespace multifield;

namespace {

VecX pack_node(const CanonicalState& s, long j) {
  const int k = static_cast<int>(s.nu.rows());
  VecX u(6 + 2 * k);
  u.segment(0, 3) = s.x.col(j);
  u.segment(3, 3) = s.p.col(j);
  u.segment(6, k) = s.nu.col(j);
  u.segment(6 + k, k) = s.mu.col(j);
  return u;
}

}  // namespace

TEST_CASE("class declarations are audited, not trusted") {
  std::mt19937 rng(91);
  CHECK_NOTHROW(check_functional_class(
      from_form("lin", random_form(3, rng, FunctionalClass::Linear), 3), 3));
  CHECK_NOTHROW(check_functional_class(
      from_form("quad", random_form(3, rng, FunctionalClass::Quadratic), 3),
      3));
  CHECK_NOTHROW(
      check_functional_class(linear_momentum_functional(Vec3(1, 2, 3)), 3));

  FunctionalSpec dishonest = linear_momentum_functional(Vec3(1, 0, 0));
  dishonest.name = "dishonest";
  dishonest.cls = FunctionalClass::Linear;
  dishonest.density = [](const DVec3&, const DVec3&, const DVec3& p,
                         const DVecX&, const DVecX& mu) {
    return sqnorm(p) + ddot(mu, mu);
  };
  dishonest.form.reset();
  CHECK_THROWS_AS(check_functional_class(dishonest, 3),
                  FunctionalClassError);
}

TEST_CASE("variational derivative of a form is b + A u") {
  MaterialModel m = default_registry().make("M1");
  Grid g = Grid::periodic(2, {5, 3, 1}, {1.0, 1.0, 1.0});
  CanonicalState s = smooth_state(m, g, 17, 0.4);
  std::mt19937 rng(92);
  QuadraticForm q = random_form(3, rng, FunctionalClass::Quadratic);
  BoundarySpec bc;

  VariationalDerivative vd =
      variational_derivative(from_form("q", q, 3), m, g, bc, s);
  for (long j = 0; j < g.node_count(); ++j) {
    VecX grad = q.b + q.A * pack_node(s, j);
    VecX got(12);
    got << vd.dx.col(j), vd.dp.col(j), vd.dnu.col(j), vd.dmu.col(j);
    CHECK((got - grad).cwiseAbs().maxCoeff() <= 1e-12);
  }
  for (const NaturalTrace& tr : vd.traces) {
    CHECK(tr.tx.norm() == 0.0);
    CHECK(tr.tnu.norm() == 0.0);
  }
}

TEST_CASE("the bracket of two forms matches the hand-rolled sum") {
  MaterialModel m = default_registry().make("M1");
  Grid g = Grid::periodic(1, {10, 1, 1}, {2.0, 1.0, 1.0});
  CanonicalState s = smooth_state(m, g, 18, 0.3);
  BoundarySpec bc;
  std::mt19937 rng(93);
  QuadraticForm qf = random_form(3, rng, FunctionalClass::Quadratic);
  QuadraticForm qg = random_form(3, rng, FunctionalClass::Quadratic);
  const MatX J = poisson_bivector(3);

  double expect = 0.0;
  for (long j = 0; j < g.node_count(); ++j) {
    const VecX u = pack_node(s, j);
    expect += (qf.b + qf.A * u).dot(J * (qg.b + qg.A * u)) * g.cell_volume();
  }
  const double got =
      bracket(from_form("f", qf, 3), from_form("g", qg, 3), m, g, bc, s);
  CHECK(got == doctest::Approx(expect).epsilon(1e-12));

  // and the closed-form product density agrees pointwise with that bracket
  QuadraticForm prod = bracket_form(qf, qg, 3);
  double via_form = 0.0;
  for (long j = 0; j < g.node_count(); ++j) {
    const VecX u = pack_node(s, j);
    via_form +=
        (prod.c + prod.b.dot(u) + 0.5 * u.dot(prod.A * u)) * g.cell_volume();
  }
  CHECK(via_form == doctest::Approx(got).epsilon(1e-12));
}

TEST_CASE("antisymmetry is exact in floating point") {
  MaterialModel m = default_registry().make("M2-director");
  Grid g = Grid::periodic(1, {12, 1, 1}, {2.0 * M_PI, 1.0, 1.0});
  CanonicalState s = smooth_state(m, g, 19, 0.25);
  BoundarySpec bc;
  FunctionalSpec H = hamiltonian_functional();
  FunctionalSpec M = moment_map_functional(*m.action, Vec3(0.2, -1.0, 0.4));

  const double fg = bracket(M, H, m, g, bc, s);
  const double gf = bracket(H, M, m, g, bc, s);
  CHECK(fg == -gf);  // bitwise, not approximate
  CHECK(fg != 0.0);  // and the value is not trivially zero
}

TEST_CASE("the bracket is bilinear") {
  MaterialModel m = default_registry().make("M1");
  Grid g = Grid::periodic(1, {8, 1, 1}, {1.0, 1.0, 1.0});
  CanonicalState s = smooth_state(m, g, 20, 0.3);
  BoundarySpec bc;
  std::mt19937 rng(94);
  FunctionalSpec F =
      from_form("F", random_form(3, rng, FunctionalClass::Quadratic), 3);
  FunctionalSpec G =
      from_form("G", random_form(3, rng, FunctionalClass::Linear), 3);
  FunctionalSpec K =
      from_form("K", random_form(3, rng, FunctionalClass::Quadratic), 3);
  const double alpha = 0.7, beta = -1.3;

  const double lhs =
      bracket(linear_combination("aF+bG", alpha, F, beta, G), K, m, g, bc, s);
  const double rhs =
      alpha * bracket(F, K, m, g, bc, s) + beta * bracket(G, K, m, g, bc, s);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("Jacobi closes on the form algebra") {
  MaterialModel m = default_registry().make("M1");
  Grid g = Grid::periodic(1, {8, 1, 1}, {1.0, 1.0, 1.0});
  CanonicalState s = smooth_state(m, g, 21, 0.3);
  BoundarySpec bc;
  std::mt19937 rng(95);
  for (int trial = 0; trial < 5; ++trial) {
    const auto cls = trial % 2 == 0 ? FunctionalClass::Quadratic
                                    : FunctionalClass::Linear;
    FunctionalSpec F = from_form("F", random_form(3, rng, cls), 3);
    FunctionalSpec G =
        from_form("G", random_form(3, rng, FunctionalClass::Quadratic), 3);
    FunctionalSpec K =
        from_form("K", random_form(3, rng, FunctionalClass::Quadratic), 3);
    CHECK(std::abs(jacobi_residual(F, G, K, m, g, bc, s)) <= 1e-8);
  }
}

TEST_CASE("Jacobi refuses the cases where closure fails") {
  std::mt19937 rng(96);
  QuadraticForm q = random_form(3, rng, FunctionalClass::Quadratic);
  FunctionalSpec F = from_form("F", q, 3);
  BoundarySpec bc;

  SUBCASE("curved order-parameter manifold") {
    MaterialModel m = default_registry().make("M2-director");
    Grid g = Grid::periodic(1, {8, 1, 1}, {1.0, 1.0, 1.0});
    CanonicalState s = smooth_state(m, g, 1, 0.1);
    CHECK_THROWS_AS(jacobi_residual(F, F, F, m, g, bc, s),
                    FunctionalClassError);
  }
  SUBCASE("bounded grid") {
    MaterialModel m = default_registry().make("M1");
    Grid g = Grid::make(
        1, {8, 1, 1}, {1.0, 1.0, 1.0},
        {{{FaceTag::Natural, FaceTag::Natural},
          {FaceTag::Periodic, FaceTag::Periodic},
          {FaceTag::Periodic, FaceTag::Periodic}}});
    CanonicalState s = smooth_state(m, g, 1, 0.1);
    CHECK_THROWS_AS(jacobi_residual(F, F, F, m, g, bc, s),
                    FunctionalClassError);
  }
  SUBCASE("operand without a closed form") {
    MaterialModel m = default_registry().make("M1");
    Grid g = Grid::periodic(1, {8, 1, 1}, {1.0, 1.0, 1.0});
    CanonicalState s = smooth_state(m, g, 1, 0.1);
    FunctionalSpec noform = F;
    noform.form.reset();
    CHECK_THROWS_AS(jacobi_residual(noform, F, F, m, g, bc, s),
                    FunctionalClassError);
  }
}

TEST_CASE("pairing momentum against H reproduces the evolution operator") {
  MaterialModel m = default_registry().make("M1");
  Grid g = Grid::make(
      1, {9, 1, 1}, {1.0, 1.0, 1.0},
      {{{FaceTag::Dirichlet, FaceTag::Natural},
        {FaceTag::Periodic, FaceTag::Periodic},
        {FaceTag::Periodic, FaceTag::Periodic}}});
  BoundarySpec bc;
  bc.xbar = [](const Vec3& X) { return X; };
  bc.nubar = [](const Vec3&) { return VecX(VecX::Zero(3)); };
  bc.surface_x_potential = [](const DVec3& x) {
    return 0.2 * x(0) + 0.1 * sqnorm(x);
  };
  bc.surface_nu_potential = [](const DVecX& nu) { return 0.3 * sqnorm(nu); };

  CanonicalState s = smooth_state(m, g, 33, 0.2);
  apply_dirichlet(m, g, bc, s);
  CHECK(momentum_pairing_gap(m, g, bc, s, Vec3(0.3, -1.0, 2.0)) <= 1e-12);
}

TEST_CASE("pairing the moment map against H matches the micro evolution") {
  MaterialModel m = default_registry().make("M2-director");
  Grid g = Grid::periodic(1, {12, 1, 1}, {2.0 * M_PI, 1.0, 1.0});
  BoundarySpec bc;
  CanonicalState s = smooth_state(m, g, 34, 0.2);
  CHECK(moment_map_pairing_gap(m, g, bc, s, Vec3(0.5, 0.5, -1.0)) <= 1e-12);
}

TEST_CASE("a winding director annihilates every moment-map bracket") {
  MaterialModel m = default_registry().make("M2-director");
  Grid g = Grid::periodic(1, {16, 1, 1}, {2.0 * M_PI, 1.0, 1.0});
  BoundarySpec bc;
  const int q = 2;
  const double omega = 0.7;

  CanonicalState s = reference_state(m, g);
  for (long j = 0; j < g.node_count(); ++j) {
    const double a = q * g.position(j)(0);
    s.nu.col(j) = Vec3(std::cos(a), std::sin(a), 0.0);
    s.mu.col(j) = omega * Vec3(-std::sin(a), std::cos(a), 0.0);
  }

  FunctionalSpec H = hamiltonian_functional();
  for (int axis = 0; axis < 3; ++axis) {
    FunctionalSpec M = moment_map_functional(*m.action, Vec3::Unit(axis));
    CHECK(std::abs(bracket(M, H, m, g, bc, s)) <= 1e-8);
  }
}

TEST_CASE("observable rates follow the bracket at second order in dt") {
  MaterialModel m = default_registry().make("M1");
  Grid g = Grid::periodic(1, {16, 1, 1}, {2.0 * M_PI, 1.0, 1.0});
  BoundarySpec bc;
  FunctionalSpec F;
  F.name = "probe";
  F.density = [](const DVec3&, const DVec3& x, const DVec3& p,
                 const DVecX& nu, const DVecX& mu) {
    return sin(x(0)) * p(1) + ddot(nu, mu);
  };

  double gaps[2];
  for (int level = 0; level < 2; ++level) {
    const double dt = 2e-3 / (1 << level);
    CanonicalState s0 = smooth_state(m, g, 35, 0.2);
    CanonicalState s1 = step(m, g, bc, s0, dt);
    CanonicalState s2 = step(m, g, bc, s1, dt);
    gaps[level] = bracket_rate_gap(F, m, g, bc, s0, s1, s2, dt);
  }
  CHECK(gaps[0] <= 1e-4);
  CHECK(gaps[0] / gaps[1] >= 3.0);
}
