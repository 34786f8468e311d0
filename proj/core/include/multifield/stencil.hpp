#pragma once

#include <array>

#include "multifield/grid.hpp"
#include "multifield/types.hpp"

namespace multifield {

// Second-order centered differences in the interior, one-sided second-order
// closures on bounded faces, wraparound on periodic axes. Fields are stored
// one column per node.

// d(field)/dX_axis, same shape as field. Zero for inactive axes.
MatX axis_derivative(const MatX& field, const Grid& g, int axis);

// All three axis derivatives of a field.
std::array<MatX, 3> gradient(const MatX& field, const Grid& g);

// Divergence over the second (referential) index of a two-point tensor field
// given by its three referential columns: out = sum_d d(cols[d])/dX_d.
MatX divergence(const std::array<MatX, 3>& cols, const Grid& g);

// Deformation gradient at a node from the gradient of the placement field:
// active axes from the stencil, inactive axes padded with identity columns.
Mat3 deformation_at(const std::array<MatX, 3>& gx, const Grid& g, long node);

// Order-parameter gradient at a node (k x 3); inactive axes give zero columns.
MatX tensor_at(const std::array<MatX, 3>& gf, long node);

// Uniform-weight quadrature: sum(density) * cell volume. Exact for smooth
// periodic integrands, first order near bounded faces.
double integrate(const VecX& density, const Grid& g);

}  // namespace multifield
