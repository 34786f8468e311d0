#pragma once

#include <cstdint>
#include <random>

#include "multifield/grid.hpp"
#include "multifield/material.hpp"
#include "multifield/point_eval.hpp"
#include "multifield/types.hpp"

namespace multifield {

// Canonical fields on the grid, one column per node.
struct CanonicalState {
  double time = 0.0;
  MatX x;   // 3 x N
  MatX p;   // 3 x N
  MatX nu;  // k x N
  MatX mu;  // k x N

  long node_count() const { return x.cols(); }
};

// x = X, everything else at rest on the manifold base point.
CanonicalState reference_state(const MaterialModel& m, const Grid& g);

// Smooth, periodic-compatible low-mode perturbation of the reference state.
// Deterministic in (seed); amplitudes scale all perturbed fields. nu stays on
// the manifold and mu stays tangent.
CanonicalState smooth_state(const MaterialModel& m, const Grid& g,
                            std::uint64_t seed, double amplitude);

// Uniform fields (no spatial dependence): homogeneous dynamics on a grid.
CanonicalState uniform_state(const MaterialModel& m, const Grid& g,
                             const VecX& nu, const VecX& mu);

// Random admissible material point with entries of order one; used by the
// property checks. Draws until det F is safely positive.
StatePoint random_state_point(const MaterialModel& m, std::mt19937_64& rng);

}  // namespace multifield
