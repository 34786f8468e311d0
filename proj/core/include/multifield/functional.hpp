#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "multifield/engine.hpp"

namespace multifield {

// Phase-space observables F[x,p,nu,mu] = sum_j f(X_j, u_j) h^dim built from
// a pointwise density over the canonical tuple u = (x, p, nu, mu) in
// R^{6+2k}.  The density is evaluated through duals so variational
// derivatives come out exactly, one seeded slot at a time.

enum class FunctionalClass { Linear, Quadratic, General };

// f(u) = c + b.u + 1/2 u^T A u with A symmetric.  Slot order inside u:
// x(3), p(3), nu(k), mu(k).
struct QuadraticForm {
  double c = 0.0;
  VecX b;
  MatX A;
};

using DensityFn = std::function<Dual(const DVec3& X, const DVec3& x,
                                     const DVec3& p, const DVecX& nu,
                                     const DVecX& mu)>;

struct FunctionalSpec {
  std::string name;
  FunctionalClass cls = FunctionalClass::General;
  DensityFn density;  // unset only for the model Hamiltonian
  bool model_hamiltonian = false;
  std::optional<QuadraticForm> form;
};

// The generating functional of the dynamics itself.  Its variational
// derivative is assembled from the evolution operator, not from a density
// closure, so the bracket against it reproduces the engine right-hand side
// without any re-derivation.
FunctionalSpec hamiltonian_functional();

// Wrap an explicit quadratic form as a functional (class Linear when A has
// no entries).  k is the order-parameter ambient dimension.
FunctionalSpec from_form(const std::string& name, const QuadraticForm& form,
                         int k);

// The constant Poisson matrix on u = (x, p, nu, mu): canonical pairs
// (x, p) and (nu, mu).
MatX poisson_bivector(int k);

// Draw a random form of the requested class; entries O(1), A symmetrized.
QuadraticForm random_form(int k, std::mt19937& rng, FunctionalClass cls);

// F = integral p.v dV for constant v.
FunctionalSpec linear_momentum_functional(const Vec3& v);

// F = integral mu.xi dV for constant xi.
FunctionalSpec micro_momentum_functional(const VecX& xi);

// F = integral mu . generator(nu, qdot) dV : the momentum-map component of
// the internal symmetry along qdot.
FunctionalSpec moment_map_functional(const GroupActionSpec& act,
                                     const VecX& qdot);

// alpha F + beta G as one functional.  Both operands must be density
// functionals; forms combine when both carry one.
FunctionalSpec linear_combination(const std::string& name, double alpha,
                                  const FunctionalSpec& f, double beta,
                                  const FunctionalSpec& g);

// Validate that the declared class is honest by sampling: Linear densities
// must have vanishing second differences, Quadratic ones vanishing third
// differences, and an attached form must reproduce the density pointwise.
// Throws FunctionalClassError naming the functional otherwise.
void check_functional_class(const FunctionalSpec& spec, int k,
                            unsigned seed = 20260814u);

// Density gradients of F at every node, plus the boundary entries that pair
// across natural faces.  dnu/dmu are tangent-projected on curved manifolds.
// For a plain density functional the traces are identically zero but kept
// aligned with the grid's natural boundary entries so bracket pairing never
// branches.
struct VariationalDerivative {
  MatX dx, dp;    // 3 x N
  MatX dnu, dmu;  // k x N
  std::vector<NaturalTrace> traces;
};

VariationalDerivative variational_derivative(const FunctionalSpec& f,
                                             const MaterialModel& m,
                                             const Grid& g,
                                             const BoundarySpec& bc,
                                             const CanonicalState& s);

double evaluate_functional(const FunctionalSpec& f, const MaterialModel& m,
                           const Grid& g, const BoundarySpec& bc,
                           const CanonicalState& s);

}  // namespace multifield
