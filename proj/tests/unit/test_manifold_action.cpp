#include "doctest.h"
#include "multifield/group_action.hpp"
#include "multifield/manifold.hpp"

using namespace multifield;

TEST_CASE("euclidean manifold is a no-op") {
  ManifoldSpec m = euclidean_manifold(4);
  CHECK(m.flat());
  CHECK(m.ambient_dim == 4);
  VecX v(4);
  v << 1, -2, 3, 0.5;
  CHECK((m.project(v) - v).norm() == 0.0);
  CHECK((m.tangent_projector(v) - MatX::Identity(4, 4)).norm() == 0.0);
  CHECK(constraint_violation(m, v) == 0.0);
}

TEST_CASE("unit sphere: projection, tangency, constraint") {
  ManifoldSpec s2 = unit_sphere_manifold();
  CHECK_FALSE(s2.flat());
  CHECK(s2.ambient_dim == 3);
  CHECK(s2.intrinsic_dim == 2);

  VecX raw(3);
  raw << 0.3, -1.2, 0.4;
  VecX nu = s2.project(raw);
  CHECK(nu.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(constraint_violation(s2, nu) == doctest::Approx(0.0).epsilon(1e-14));
  // retraction keeps the direction
  CHECK((nu - raw / raw.norm()).norm() ==
        doctest::Approx(0.0).epsilon(1e-15));

  MatX P = s2.tangent_projector(nu);
  CHECK((P * nu).norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK((P * P - P).norm() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK((P - P.transpose()).norm() == 0.0);

  VecX v(3);
  v << 1, 0, 0;
  VecX tv = P * v;
  CHECK(tangency_defect(s2, nu, tv) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(tangency_defect(s2, nu, nu) == doctest::Approx(1.0));
}

TEST_CASE("so(3) vector action: generator, derivative, A-operator") {
  GroupActionSpec act = so3_vector_action();
  CHECK(act.group_dim == 3);

  VecX nu(3), qdot(3), dir(3);
  nu << 0.2, -0.5, 0.8;
  qdot << 1.0, 2.0, -1.0;
  dir << -0.3, 0.1, 0.7;

  Vec3 n3(nu(0), nu(1), nu(2)), q3(qdot(0), qdot(1), qdot(2));
  VecX xi = generator_value(act, nu, qdot);
  Vec3 expect = q3.cross(n3);
  CHECK((Vec3(xi(0), xi(1), xi(2)) - expect).norm() ==
        doctest::Approx(0.0).epsilon(1e-15));

  // the generator is linear in nu, so its nu-derivative is qdot x dir
  VecX dxi = generator_nu_derivative(act, nu, qdot, dir);
  Vec3 d3(dir(0), dir(1), dir(2));
  CHECK((Vec3(dxi(0), dxi(1), dxi(2)) - q3.cross(d3)).norm() ==
        doctest::Approx(0.0).epsilon(1e-15));

  // A(nu) qdot must reproduce the generator
  MatX A = act.a_operator(nu);
  CHECK((A * qdot - xi).norm() == doctest::Approx(0.0).epsilon(1e-15));
}
