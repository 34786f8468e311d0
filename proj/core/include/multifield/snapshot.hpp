#pragma once

#include <iosfwd>
#include <string>

#include "multifield/grid.hpp"
#include "multifield/state.hpp"

namespace multifield {

// Plain-text state table. Layout:
//
//   multifield-state 1 model=<id> k=<ambient> dim=<d> nodes=<n0,n1,n2>
//       extent=<e0,e1,e2> faces=<2 tags per axis, P/D/N> time=<t>
//   node X0 X1 X2 x0 x1 x2 p0 p1 p2 nu0..nu(k-1) mu0..mu(k-1)
//   0 ...
//
// Header on one line, then the column legend, then one row per node with
// every number printed as %.17g so a read-back reproduces the state bit for
// bit. The format is stable; bump the leading version number on change.
struct Snapshot {
  std::string model;
  Grid grid;
  CanonicalState state;
};

void write_snapshot(std::ostream& os, const std::string& model_id,
                    const Grid& g, const CanonicalState& s);
void write_snapshot_file(const std::string& path, const std::string& model_id,
                         const Grid& g, const CanonicalState& s);

// Throws ConfigError on malformed input.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot_file(const std::string& path);

}  // namespace multifield
