#include "multifield/stencil.hpp"

namespace multifield {

MatX axis_derivative(const MatX& field, const Grid& g, int axis) {
  const long n = g.node_count();
  MatX out = MatX::Zero(field.rows(), n);
  if (axis >= g.dim) return out;

  const double h = g.h[axis];
  const int len = g.nodes[axis];
  const bool wrap = g.periodic_axis(axis);

  for (long node = 0; node < n; ++node) {
    auto ijk = g.coords(node);
    const int i = ijk[axis];
    auto at = [&](int shifted) {
      auto q = ijk;
      q[axis] = shifted;
      return g.index(q);
    };

    if (wrap) {
      const long fwd = at((i + 1) % len);
      const long bwd = at((i - 1 + len) % len);
      out.col(node) = (field.col(fwd) - field.col(bwd)) / (2.0 * h);
    } else if (i == 0) {
      out.col(node) = (-3.0 * field.col(at(0)) + 4.0 * field.col(at(1)) -
                       field.col(at(2))) /
                      (2.0 * h);
    } else if (i == len - 1) {
      out.col(node) = (3.0 * field.col(at(len - 1)) -
                       4.0 * field.col(at(len - 2)) + field.col(at(len - 3))) /
                      (2.0 * h);
    } else {
      out.col(node) = (field.col(at(i + 1)) - field.col(at(i - 1))) / (2.0 * h);
    }
  }
  return out;
}

std::array<MatX, 3> gradient(const MatX& field, const Grid& g) {
  return {axis_derivative(field, g, 0), axis_derivative(field, g, 1),
          axis_derivative(field, g, 2)};
}

MatX divergence(const std::array<MatX, 3>& cols, const Grid& g) {
  MatX out = axis_derivative(cols[0], g, 0);
  for (int d = 1; d < g.dim; ++d) out += axis_derivative(cols[d], g, d);
  return out;
}

Mat3 deformation_at(const std::array<MatX, 3>& gx, const Grid& g, long node) {
  Mat3 f;
  for (int d = 0; d < 3; ++d) {
    if (d < g.dim)
      f.col(d) = gx[d].col(node);
    else
      f.col(d) = Vec3::Unit(d);
  }
  return f;
}

MatX tensor_at(const std::array<MatX, 3>& gf, long node) {
  MatX t(gf[0].rows(), 3);
  for (int d = 0; d < 3; ++d) t.col(d) = gf[d].col(node);
  return t;
}

double integrate(const VecX& density, const Grid& g) {
  return density.sum() * g.cell_volume();
}

}  // namespace multifield
