#pragma once

#include <functional>
#include <string>

#include "multifield/types.hpp"

namespace multifield {

// Order-parameter manifold, handled through its ambient embedding: a
// constraint map that vanishes on the manifold, a projection back onto it,
// and the orthogonal projector onto the tangent space. No charts anywhere.
struct ManifoldSpec {
  std::string name;
  int ambient_dim = 0;
  int intrinsic_dim = 0;
  std::function<VecX(const VecX&)> constraint;         // size ambient-intrinsic
  std::function<VecX(const VecX&)> project;            // retraction to the manifold
  std::function<MatX(const VecX&)> tangent_projector;  // ambient x ambient

  bool flat() const { return ambient_dim == intrinsic_dim; }
};

// R^dim with trivial constraint and identity projectors.
ManifoldSpec euclidean_manifold(int dim);

// Unit sphere S^2 embedded in R^3.
ManifoldSpec unit_sphere_manifold();

// Largest violation of manifold membership, zero on flat spaces.
double constraint_violation(const ManifoldSpec& m, const VecX& nu);

// Norm of the normal component of a would-be tangent vector at nu.
double tangency_defect(const ManifoldSpec& m, const VecX& nu, const VecX& v);

}  // namespace multifield
