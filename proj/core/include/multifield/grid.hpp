#pragma once

#include <array>
#include <vector>

#include "multifield/types.hpp"

namespace multifield {

enum class FaceTag { Dirichlet, Natural, Periodic };

// Structured node-centered grid over the reference body. dim axes are
// active; reference positions live in R^3 regardless, with inactive
// coordinates pinned to zero. Periodic axes identify node n with node 0,
// so spacing is extent/n; bounded axes place nodes on both faces with
// spacing extent/(n-1).
struct Grid {
  int dim = 1;
  std::array<int, 3> nodes = {1, 1, 1};
  std::array<double, 3> extent = {1.0, 1.0, 1.0};
  std::array<std::array<FaceTag, 2>, 3> faces{};  // [axis][low, high]

  std::array<double, 3> h = {0.0, 0.0, 0.0};

  static Grid make(int dim, std::array<int, 3> nodes,
                   std::array<double, 3> extent,
                   std::array<std::array<FaceTag, 2>, 3> faces);
  static Grid periodic(int dim, std::array<int, 3> nodes,
                       std::array<double, 3> extent);

  long node_count() const {
    long n = 1;
    for (int d = 0; d < dim; ++d) n *= nodes[d];
    return n;
  }
  bool periodic_axis(int d) const {
    return faces[d][0] == FaceTag::Periodic;
  }

  long index(std::array<int, 3> ijk) const {
    long idx = ijk[dim - 1];
    for (int d = dim - 2; d >= 0; --d) idx = idx * nodes[d] + ijk[d];
    return idx;
  }
  std::array<int, 3> coords(long n) const {
    std::array<int, 3> ijk = {0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      ijk[d] = static_cast<int>(n % nodes[d]);
      n /= nodes[d];
    }
    return ijk;
  }
  Vec3 position(long n) const {
    const auto ijk = coords(n);
    Vec3 X = Vec3::Zero();
    for (int d = 0; d < dim; ++d) X(d) = ijk[d] * h[d];
    return X;
  }

  // true when the node touches face (axis, side) of a non-periodic axis
  bool on_face(long n, int axis, int side) const {
    if (periodic_axis(axis) || axis >= dim) return false;
    const auto ijk = coords(n);
    return side == 0 ? ijk[axis] == 0 : ijk[axis] == nodes[axis] - 1;
  }
  bool interior(long n) const {
    const auto ijk = coords(n);
    for (int d = 0; d < dim; ++d) {
      if (periodic_axis(d)) continue;
      if (ijk[d] == 0 || ijk[d] == nodes[d] - 1) return false;
    }
    return true;
  }

  // Nodes on any Natural or Dirichlet face, with outward normals.
  struct BoundaryNode {
    long node;
    int axis;
    int side;  // 0 low, 1 high
    FaceTag tag;
  };
  std::vector<BoundaryNode> boundary_nodes() const;

  double cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= h[d];
    return v;
  }
  // Quadrature weight of the face element carried by one boundary node.
  double face_area(int axis) const {
    double a = 1.0;
    for (int d = 0; d < dim; ++d)
      if (d != axis) a *= h[d];
    return a;
  }
};

}  // namespace multifield
