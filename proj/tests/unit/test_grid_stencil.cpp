#include <cmath>

#include "doctest.h"
#include "multifield/grid.hpp"
#include "multifield/stencil.hpp"

using namespace multifield;

namespace {
constexpr double tau = 2.0 * M_PI;
}

TEST_CASE("grid bookkeeping") {
  Grid g = Grid::periodic(2, {6, 4, 1}, {3.0, 2.0, 1.0});
  CHECK(g.node_count() == 24);
  CHECK(g.h[0] == doctest::Approx(0.5));
  CHECK(g.h[1] == doctest::Approx(0.5));
  for (long n = 0; n < g.node_count(); ++n)
    CHECK(g.index(g.coords(n)) == n);
  CHECK(g.boundary_nodes().empty());
  CHECK(g.cell_volume() == doctest::Approx(0.25));
  CHECK(g.face_area(0) == doctest::Approx(0.5));

  Grid b = Grid::make(
      1, {9, 1, 1}, {1.0, 1.0, 1.0},
      {{{FaceTag::Dirichlet, FaceTag::Natural},
        {FaceTag::Periodic, FaceTag::Periodic},
        {FaceTag::Periodic, FaceTag::Periodic}}});
  CHECK(b.h[0] == doctest::Approx(1.0 / 8.0));
  auto bn = b.boundary_nodes();
  REQUIRE(bn.size() == 2);
  CHECK(bn[0].node == 0);
  CHECK(bn[0].tag == FaceTag::Dirichlet);
  CHECK(bn[1].node == 8);
  CHECK(bn[1].tag == FaceTag::Natural);
  CHECK_FALSE(b.interior(0));
  CHECK(b.interior(4));
  CHECK(b.on_face(8, 0, 1));
}

TEST_CASE("derivatives are exact on quadratics, including one-sided rows") {
  Grid g = Grid::make(
      2, {7, 5, 1}, {1.2, 1.0, 1.0},
      {{{FaceTag::Natural, FaceTag::Natural},
        {FaceTag::Natural, FaceTag::Natural},
        {FaceTag::Periodic, FaceTag::Periodic}}});
  MatX f(1, g.node_count());
  for (long n = 0; n < g.node_count(); ++n) {
    Vec3 X = g.position(n);
    f(0, n) = 2.0 + 3.0 * X(0) - X(1) + 0.5 * X(0) * X(0) +
              0.25 * X(0) * X(1);
  }
  MatX d0 = axis_derivative(f, g, 0);
  MatX d1 = axis_derivative(f, g, 1);
  for (long n = 0; n < g.node_count(); ++n) {
    Vec3 X = g.position(n);
    CHECK(d0(0, n) ==
          doctest::Approx(3.0 + X(0) + 0.25 * X(1)).epsilon(1e-12));
    CHECK(d1(0, n) == doctest::Approx(-1.0 + 0.25 * X(0)).epsilon(1e-12));
  }
}

TEST_CASE("periodic derivative converges at second order") {
  double errs[2];
  int idx = 0;
  for (int n : {32, 64}) {
    Grid g = Grid::periodic(1, {n, 1, 1}, {tau, 1.0, 1.0});
    MatX f(1, g.node_count());
    for (long j = 0; j < g.node_count(); ++j)
      f(0, j) = std::sin(g.position(j)(0));
    MatX d = axis_derivative(f, g, 0);
    double worst = 0.0;
    for (long j = 0; j < g.node_count(); ++j)
      worst = std::max(worst,
                       std::abs(d(0, j) - std::cos(g.position(j)(0))));
    errs[idx++] = worst;
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("summed divergence telescopes to zero on periodic grids") {
  Grid g = Grid::periodic(3, {4, 4, 4}, {1.0, 1.5, 2.0});
  std::array<MatX, 3> cols;
  unsigned state = 123u;
  auto next = [&state] {  // cheap deterministic noise
    state = state * 1664525u + 1013904223u;
    return (state >> 8) * (1.0 / 16777216.0) - 0.5;
  };
  for (int d = 0; d < 3; ++d) {
    cols[d] = MatX(2, g.node_count());
    for (long j = 0; j < g.node_count(); ++j)
      for (int r = 0; r < 2; ++r) cols[d](r, j) = next();
  }
  MatX div = divergence(cols, g);
  for (int r = 0; r < 2; ++r) {
    double sum = 0.0;
    for (long j = 0; j < g.node_count(); ++j) sum += div(r, j);
    CHECK(std::abs(sum) * g.cell_volume() <= 1e-13);
  }
}

TEST_CASE("deformation gradient pads inactive axes with identity") {
  Grid g = Grid::periodic(1, {16, 1, 1}, {tau, 1.0, 1.0});
  MatX x(3, g.node_count());
  for (long j = 0; j < g.node_count(); ++j) {
    Vec3 X = g.position(j);
    x.col(j) = X + Vec3(0.1 * std::sin(X(0)), 0.0, 0.0);
  }
  auto gx = gradient(x, g);
  Mat3 F = deformation_at(gx, g, 3);
  double X0 = g.position(3)(0);
  CHECK(F(0, 0) == doctest::Approx(1.0 + 0.1 * std::cos(X0)).epsilon(1e-2));
  CHECK(F(1, 1) == 1.0);
  CHECK(F(2, 2) == 1.0);
  CHECK(F(0, 1) == 0.0);
  CHECK(F(1, 0) == 0.0);
}

TEST_CASE("nodal quadrature is exact for trig polynomials on the torus") {
  Grid g = Grid::periodic(1, {12, 1, 1}, {tau, 1.0, 1.0});
  VecX one = VecX::Ones(g.node_count());
  CHECK(integrate(one, g) == doctest::Approx(tau).epsilon(1e-14));

  VecX s2(g.node_count());
  for (long j = 0; j < g.node_count(); ++j) {
    double v = std::sin(g.position(j)(0));
    s2(j) = v * v;
  }
  CHECK(integrate(s2, g) == doctest::Approx(tau / 2.0).epsilon(1e-13));
}
