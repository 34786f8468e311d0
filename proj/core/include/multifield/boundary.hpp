#pragma once

#include <functional>

#include "multifield/types.hpp"

namespace multifield {

// Boundary data for bounded grids. Dirichlet faces prescribe placement and
// order parameter; Natural faces prescribe tractions through surface
// potentials, traction = rho0 * d(potential)/d(field). All closures may be
// empty when the corresponding face tag never occurs.
struct BoundarySpec {
  std::function<Vec3(const Vec3& X)> xbar;
  std::function<VecX(const Vec3& X)> nubar;
  std::function<Dual(const DVec3& x)> surface_x_potential;    // Ubar
  std::function<Dual(const DVecX& nu)> surface_nu_potential;  // U
};

// rho0 * d(surface_x_potential)/dx at x; zero when no potential is set.
Vec3 boundary_traction(const BoundarySpec& bc, double rho0, const Vec3& x);

// rho0 * d(surface_nu_potential)/dnu at nu; zero when no potential is set.
VecX boundary_microtraction(const BoundarySpec& bc, double rho0, const VecX& nu);

}  // namespace multifield
