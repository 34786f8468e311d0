#include "multifield/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "multifield/errors.hpp"

namespace multifield {

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

char tag_char(FaceTag t) {
  switch (t) {
    case FaceTag::Periodic: return 'P';
    case FaceTag::Dirichlet: return 'D';
    case FaceTag::Natural: return 'N';
  }
  return '?';
}

FaceTag tag_from(char c) {
  switch (c) {
    case 'P': return FaceTag::Periodic;
    case 'D': return FaceTag::Dirichlet;
    case 'N': return FaceTag::Natural;
  }
  throw ConfigError(std::string("snapshot: unknown face tag '") + c + "'");
}

// key=value token; value must not contain spaces (model ids with spaces are
// rejected at write time implicitly by the read side).
std::string expect_kv(std::istringstream& ls, const std::string& key) {
  std::string tok;
  if (!(ls >> tok) || tok.rfind(key + "=", 0) != 0)
    throw ConfigError("snapshot: expected " + key + "=... in header");
  return tok.substr(key.size() + 1);
}

std::array<double, 3> parse_triple(const std::string& s) {
  std::array<double, 3> out{};
  std::istringstream is(s);
  char comma;
  if (!(is >> out[0] >> comma >> out[1] >> comma >> out[2]))
    throw ConfigError("snapshot: bad triple '" + s + "'");
  return out;
}

}  // namespace

void write_snapshot(std::ostream& os, const std::string& model_id,
                    const Grid& g, const CanonicalState& s) {
  const int k = static_cast<int>(s.nu.rows());
  os << "multifield-state 1 model=" << model_id << " k=" << k
     << " dim=" << g.dim << " nodes=" << g.nodes[0] << ',' << g.nodes[1] << ','
     << g.nodes[2] << " extent=" << g17(g.extent[0]) << ',' << g17(g.extent[1])
     << ',' << g17(g.extent[2]) << " faces=";
  for (int d = 0; d < 3; ++d)
    os << tag_char(g.faces[d][0]) << tag_char(g.faces[d][1]);
  os << " time=" << g17(s.time) << '\n';

  os << "node X0 X1 X2 x0 x1 x2 p0 p1 p2";
  for (int i = 0; i < k; ++i) os << " nu" << i;
  for (int i = 0; i < k; ++i) os << " mu" << i;
  os << '\n';

  for (long j = 0; j < g.node_count(); ++j) {
    const Vec3 X = g.position(j);
    os << j;
    for (int i = 0; i < 3; ++i) os << ' ' << g17(X(i));
    for (int i = 0; i < 3; ++i) os << ' ' << g17(s.x(i, j));
    for (int i = 0; i < 3; ++i) os << ' ' << g17(s.p(i, j));
    for (int i = 0; i < k; ++i) os << ' ' << g17(s.nu(i, j));
    for (int i = 0; i < k; ++i) os << ' ' << g17(s.mu(i, j));
    os << '\n';
  }
}

void write_snapshot_file(const std::string& path, const std::string& model_id,
                         const Grid& g, const CanonicalState& s) {
  std::ofstream os(path);
  if (!os) throw ConfigError("snapshot: cannot open " + path + " for writing");
  write_snapshot(os, model_id, g, s);
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("snapshot: empty input");
  std::istringstream ls(line);
  std::string magic;
  int version = 0;
  if (!(ls >> magic >> version) || magic != "multifield-state" || version != 1)
    throw ConfigError("snapshot: bad header '" + line + "'");

  Snapshot snap;
  snap.model = expect_kv(ls, "model");
  const int k = std::stoi(expect_kv(ls, "k"));
  const int dim = std::stoi(expect_kv(ls, "dim"));
  const auto nodes_d = parse_triple(expect_kv(ls, "nodes"));
  const auto extent = parse_triple(expect_kv(ls, "extent"));
  const std::string faces = expect_kv(ls, "faces");
  if (faces.size() != 6) throw ConfigError("snapshot: faces needs 6 tags");
  std::array<std::array<FaceTag, 2>, 3> tags{};
  for (int d = 0; d < 3; ++d) {
    tags[d][0] = tag_from(faces[2 * d]);
    tags[d][1] = tag_from(faces[2 * d + 1]);
  }
  const double time = std::stod(expect_kv(ls, "time"));

  snap.grid = Grid::make(
      dim,
      {static_cast<int>(nodes_d[0]), static_cast<int>(nodes_d[1]),
       static_cast<int>(nodes_d[2])},
      extent, tags);

  if (!std::getline(is, line))
    throw ConfigError("snapshot: missing column legend");

  const long n = snap.grid.node_count();
  CanonicalState& s = snap.state;
  s.time = time;
  s.x = MatX::Zero(3, n);
  s.p = MatX::Zero(3, n);
  s.nu = MatX::Zero(k, n);
  s.mu = MatX::Zero(k, n);

  for (long row = 0; row < n; ++row) {
    if (!std::getline(is, line))
      throw ConfigError("snapshot: truncated at row " + std::to_string(row));
    std::istringstream rs(line);
    long j;
    double drop;
    if (!(rs >> j) || j < 0 || j >= n)
      throw ConfigError("snapshot: bad node index in row " +
                        std::to_string(row));
    for (int i = 0; i < 3; ++i) rs >> drop;  // X is implied by the grid
    for (int i = 0; i < 3; ++i) rs >> s.x(i, j);
    for (int i = 0; i < 3; ++i) rs >> s.p(i, j);
    for (int i = 0; i < k; ++i) rs >> s.nu(i, j);
    for (int i = 0; i < k; ++i) rs >> s.mu(i, j);
    if (!rs) throw ConfigError("snapshot: short row " + std::to_string(row));
  }
  return snap;
}

Snapshot read_snapshot_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("snapshot: cannot open " + path);
  return read_snapshot(is);
}

}  // namespace multifield
