#include "doctest.h"
#include "multifield/dual.hpp"
#include "multifield/types.hpp"

#include <cmath>

using namespace multifield;

namespace {

// central difference with a step tuned for ~1e-10 truncation
double fd(double (*f)(double), double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double messy(double x) {
  return std::sin(x) * std::exp(0.5 * x) / (1.0 + x * x) +
         std::pow(std::abs(x) + 0.3, 1.7);
}

Dual messy(Dual x) {
  return sin(x) * exp(0.5 * x) / (1.0 + x * x) + pow(abs(x) + 0.3, 1.7);
}

}  // namespace

TEST_CASE("dual scalar chain rule vs finite differences") {
  for (double x : {-1.3, -0.4, 0.2, 0.9, 2.7}) {
    Dual d = messy(Dual(x, 1.0));
    CHECK(d.v == doctest::Approx(messy(x)).epsilon(1e-14));
    CHECK(d.d == doctest::Approx(fd(messy, x)).epsilon(1e-7));
  }
}

TEST_CASE("dual elementary identities") {
  Dual a(0.7, 1.0);
  CHECK(tangent(sqrt(a * a)) == doctest::Approx(1.0));
  CHECK(tangent(log(exp(a))) == doctest::Approx(1.0));
  CHECK(tangent(tan(a)) ==
        doctest::Approx(1.0 / (std::cos(0.7) * std::cos(0.7))));
  CHECK(tangent(tanh(a)) ==
        doctest::Approx(1.0 - std::tanh(0.7) * std::tanh(0.7)));
  // abs kinks: derivative is sign(x) away from zero
  CHECK(tangent(abs(Dual(-2.0, 1.0))) == -1.0);
  CHECK(tangent(fabs(Dual(3.0, 1.0))) == 1.0);
  // comparisons look at values only
  CHECK(Dual(1.0, 99.0) < Dual(2.0, -99.0));
  CHECK(isfinite(a));
  CHECK_FALSE(isfinite(Dual(1.0, std::nan(""))));
}

TEST_CASE("dual arithmetic with plain doubles on either side") {
  Dual a(2.0, 1.0);
  CHECK(value(3.0 * a - 1.0) == doctest::Approx(5.0));
  CHECK(tangent(3.0 * a - 1.0) == doctest::Approx(3.0));
  CHECK(tangent(1.0 / a) == doctest::Approx(-0.25));
  CHECK(tangent(a / 4.0) == doctest::Approx(0.25));
  Dual b = -a;
  CHECK(b.v == -2.0);
  CHECK(b.d == -1.0);
  b += 1.0;
  b *= Dual(2.0, 0.0);
  CHECK(b.v == -2.0);
  CHECK(b.d == -2.0);
}

TEST_CASE("dual flows through Eigen matrix algebra") {
  Mat3 A, B;
  A << 1, 2, 0, 0, 1, 3, 1, 0, 1;
  B << 0.5, 0, 1, 1, 0.2, 0, 0, 1, 0.7;
  // seed M = A + s B and check d/ds (M * M^T) = B A^T + A B^T at s = 0
  DMat3 M = lift(A);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j).d = B(i, j);
  DMat3 prod = M * M.transpose();
  Mat3 expected = B * A.transpose() + A * B.transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(prod(i, j).d == doctest::Approx(expected(i, j)).epsilon(1e-13));

  // determinant derivative: d det = det(A) tr(A^-1 B)
  Dual det = M.determinant();
  double expect_ddet =
      A.determinant() * (A.inverse() * B).trace();
  CHECK(det.v == doctest::Approx(A.determinant()));
  CHECK(det.d == doctest::Approx(expect_ddet).epsilon(1e-12));
}

TEST_CASE("types helpers: sqnorm, ddot, dtrace, skew/axial/hat") {
  DVecX v = lift(VecX(Vec3(1.0, -2.0, 0.5)));
  v(1).d = 1.0;
  CHECK(tangent(sqnorm(v)) == doctest::Approx(-4.0));

  DVecX w = lift(VecX(Vec3(0.0, 1.0, 2.0)));
  CHECK(tangent(ddot(v, w)) == doctest::Approx(1.0));
  CHECK(value(ddot(v, w)) == doctest::Approx(-1.0));

  DMat3 m = lift(Mat3(Mat3::Identity()));
  m(0, 0).d = 2.0;
  m(1, 1).d = 3.0;
  CHECK(tangent(dtrace(m)) == doctest::Approx(5.0));

  // axial(skw M) x u reproduces the skew action
  Mat3 S;
  S << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  Vec3 u(0.4, -0.2, 0.9);
  Vec3 ax = axial(skew_part(S));
  CHECK((S * u - ax.cross(u)).norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK((hat(ax) - S).norm() == doctest::Approx(0.0).epsilon(1e-14));
}
