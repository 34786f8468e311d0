#pragma once

#include <functional>
#include <string>

#include "multifield/types.hpp"

namespace multifield {

// Lie group acting on the order-parameter manifold, given infinitesimally:
// the generator field of an algebra element qdot at nu. The generator is
// written over duals so its nu-derivative (needed by chain rules in the
// symmetry checks) comes out of the same closure.
struct GroupActionSpec {
  std::string name;
  int group_dim = 0;
  std::function<DVecX(const DVecX& nu, const VecX& qdot)> generator;
  // Linear operator A(nu) with generator(nu, qdot) == A(nu) * qdot.
  std::function<MatX(const VecX& nu)> a_operator;
};

// Rotations acting on a vector order parameter in R^3: qdot x nu.
GroupActionSpec so3_vector_action();

// generator evaluated on plain values
VecX generator_value(const GroupActionSpec& g, const VecX& nu, const VecX& qdot);

// Directional derivative of the generator in nu along dir.
VecX generator_nu_derivative(const GroupActionSpec& g, const VecX& nu,
                             const VecX& qdot, const VecX& dir);

}  // namespace multifield
