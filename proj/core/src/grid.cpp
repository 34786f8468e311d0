#include "multifield/grid.hpp"

#include "multifield/errors.hpp"

namespace multifield {

Grid Grid::make(int dim, std::array<int, 3> nodes, std::array<double, 3> extent,
                std::array<std::array<FaceTag, 2>, 3> faces) {
  if (dim < 1 || dim > 3) throw ConfigError("grid dim must be 1, 2, or 3");
  Grid g;
  g.dim = dim;
  g.nodes = nodes;
  g.extent = extent;
  g.faces = faces;
  for (int d = 0; d < dim; ++d) {
    if (nodes[d] < 3)
      throw ConfigError("grid needs at least 3 nodes per active axis");
    if (!(extent[d] > 0.0)) throw ConfigError("grid extent must be positive");
    const bool lo = faces[d][0] == FaceTag::Periodic;
    const bool hi = faces[d][1] == FaceTag::Periodic;
    if (lo != hi)
      throw ConfigError("periodic tag must apply to both faces of an axis");
    g.h[d] = lo ? extent[d] / nodes[d] : extent[d] / (nodes[d] - 1);
  }
  for (int d = dim; d < 3; ++d) {
    g.nodes[d] = 1;
    g.h[d] = 0.0;
  }
  return g;
}

Grid Grid::periodic(int dim, std::array<int, 3> nodes,
                    std::array<double, 3> extent) {
  std::array<std::array<FaceTag, 2>, 3> faces{};
  for (auto& f : faces) f = {FaceTag::Periodic, FaceTag::Periodic};
  return make(dim, nodes, extent, faces);
}

std::vector<Grid::BoundaryNode> Grid::boundary_nodes() const {
  std::vector<BoundaryNode> out;
  for (long n = 0; n < node_count(); ++n) {
    for (int d = 0; d < dim; ++d) {
      for (int side = 0; side < 2; ++side) {
        if (on_face(n, d, side))
          out.push_back(BoundaryNode{n, d, side, faces[d][side]});
      }
    }
  }
  return out;
}

}  // namespace multifield
