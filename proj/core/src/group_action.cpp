#include "multifield/group_action.hpp"

namespace multifield {

GroupActionSpec so3_vector_action() {
  GroupActionSpec g;
  g.name = "so3-vector";
  g.group_dim = 3;
  g.generator = [](const DVecX& nu, const VecX& qdot) -> DVecX {
    DVecX out(3);
    out(0) = qdot(1) * nu(2) - qdot(2) * nu(1);
    out(1) = qdot(2) * nu(0) - qdot(0) * nu(2);
    out(2) = qdot(0) * nu(1) - qdot(1) * nu(0);
    return out;
  };
  g.a_operator = [](const VecX& nu) -> MatX {
    // qdot x nu == -hat(nu) qdot
    return -hat(Vec3(nu(0), nu(1), nu(2)));
  };
  return g;
}

VecX generator_value(const GroupActionSpec& g, const VecX& nu,
                     const VecX& qdot) {
  return values(g.generator(lift(nu), qdot));
}

VecX generator_nu_derivative(const GroupActionSpec& g, const VecX& nu,
                             const VecX& qdot, const VecX& dir) {
  DVecX nu_d = lift(nu);
  for (Eigen::Index i = 0; i < nu_d.size(); ++i) nu_d(i).d = dir(i);
  return tangents(g.generator(nu_d, qdot));
}

}  // namespace multifield
