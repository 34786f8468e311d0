#include "multifield/manifold.hpp"

#include "multifield/errors.hpp"

namespace multifield {

ManifoldSpec euclidean_manifold(int dim) {
  if (dim < 1) throw ConfigError("euclidean_manifold: dim must be positive");
  ManifoldSpec m;
  m.name = "euclidean-" + std::to_string(dim);
  m.ambient_dim = dim;
  m.intrinsic_dim = dim;
  m.constraint = [](const VecX&) { return VecX(0); };
  m.project = [](const VecX& y) { return y; };
  m.tangent_projector = [dim](const VecX&) -> MatX {
    return MatX::Identity(dim, dim);
  };
  return m;
}

ManifoldSpec unit_sphere_manifold() {
  ManifoldSpec m;
  m.name = "sphere-S2";
  m.ambient_dim = 3;
  m.intrinsic_dim = 2;
  m.constraint = [](const VecX& y) {
    VecX c(1);
    c(0) = 0.5 * (y.squaredNorm() - 1.0);
    return c;
  };
  m.project = [](const VecX& y) -> VecX {
    const double n = y.norm();
    if (n == 0.0) throw ConfigError("sphere projection undefined at the origin");
    return y / n;
  };
  m.tangent_projector = [](const VecX& nu) -> MatX {
    return MatX::Identity(3, 3) - nu * nu.transpose();
  };
  return m;
}

double constraint_violation(const ManifoldSpec& m, const VecX& nu) {
  const VecX c = m.constraint(nu);
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

double tangency_defect(const ManifoldSpec& m, const VecX& nu, const VecX& v) {
  const MatX t = m.tangent_projector(nu);
  return (v - t * v).norm();
}

}  // namespace multifield
