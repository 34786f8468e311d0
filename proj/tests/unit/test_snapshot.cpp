#include <sstream>

#include "doctest.h"
#include "multifield/errors.hpp"
#include "multifield/snapshot.hpp"

using namespace multifield;

TEST_CASE("snapshot round trip is bit exact") {
  MaterialModel m = default_registry().make("M2-director");
  Grid g = Grid::make(
      2, {5, 4, 1}, {1.0, 2.0, 1.0},
      {{{FaceTag::Dirichlet, FaceTag::Natural},
        {FaceTag::Periodic, FaceTag::Periodic},
        {FaceTag::Periodic, FaceTag::Periodic}}});
  CanonicalState s = smooth_state(m, g, 77, 0.3);
  s.time = 0.123456789012345;

  std::stringstream buf;
  write_snapshot(buf, "M2-director", g, s);
  Snapshot back = read_snapshot(buf);

  CHECK(back.model == "M2-director");
  CHECK(back.grid.dim == 2);
  CHECK(back.grid.nodes == g.nodes);
  CHECK(back.grid.extent == g.extent);
  CHECK(back.grid.faces == g.faces);
  CHECK(back.state.time == s.time);
  CHECK((back.state.x - s.x).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.state.p - s.p).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.state.nu - s.nu).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.state.mu - s.mu).cwiseAbs().maxCoeff() == 0.0);

  // a second write of the read-back state is byte identical
  std::stringstream again;
  write_snapshot(again, back.model, back.grid, back.state);
  CHECK(again.str() == buf.str());
}

TEST_CASE("snapshot reader rejects junk") {
  MaterialModel m = default_registry().make("M1");
  Grid g = Grid::periodic(1, {4, 1, 1}, {1.0, 1.0, 1.0});
  CanonicalState s = reference_state(m, g);
  std::stringstream buf;
  write_snapshot(buf, "M1", g, s);
  const std::string text = buf.str();

  SUBCASE("empty stream") {
    std::stringstream in("");
    CHECK_THROWS_AS(read_snapshot(in), ConfigError);
  }
  SUBCASE("wrong magic") {
    std::stringstream in("not-a-snapshot 1 model=M1\n");
    CHECK_THROWS_AS(read_snapshot(in), ConfigError);
  }
  SUBCASE("truncated node table") {
    std::stringstream in(text.substr(0, text.size() * 2 / 3));
    CHECK_THROWS_AS(read_snapshot(in), ConfigError);
  }
  SUBCASE("non-numeric entry") {
    std::string bad = text;
    bad.replace(bad.rfind("0 0 0"), 5, "0 x 0");
    std::stringstream in(bad);
    CHECK_THROWS_AS(read_snapshot(in), ConfigError);
  }
}
