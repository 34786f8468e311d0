#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "multifield/errors.hpp"
#include "multifield/report.hpp"

using namespace multifield;

TEST_CASE("g17 strings read back to the same bits") {
  // strtod, not stod: stod throws on the ERANGE that glibc flags for
  // subnormals even though the conversion itself is exact.
  for (double v : {0.1, 1.0 / 3.0, 2.0 * M_PI, 1e-300, -4.9406564584124654e-324,
                   123456789.123456789}) {
    CHECK(std::strtod(g17(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("csv writers emit stable headers and rows") {
  std::stringstream rs;
  write_residual_csv(rs, {{0.5, "energy", 1.25e-9, 0}});
  CHECK(rs.str() == "time,check,norm,level\n0.5,energy,1.25e-09,0\n");

  std::stringstream as;
  write_audit_csv(as, {{"jacobi", 3.0e-12, 1e-8, true},
                       {"skew", 0.25, 1e-10, false}});
  CHECK(as.str() ==
        "check,value,tolerance,pass\n"
        "jacobi,3.0000000000000001e-12,1e-08,pass\n"
        "skew,0.25,1e-10,fail\n");
}

TEST_CASE("fitted order recovers a synthetic slope") {
  std::vector<double> h = {0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e2, e1;
  for (double hi : h) {
    e2.push_back(3.0 * hi * hi);
    e1.push_back(0.7 * hi);
  }
  CHECK(fitted_order(h, e2) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fitted_order(h, e1) == doctest::Approx(1.0).epsilon(1e-10));
  // exact zeros (better than the model) are dropped, not log'd
  CHECK(std::isinf(fitted_order(h, {0.0, 0.0, 0.0, 0.0})));
}

TEST_CASE("output directory resolution honors the environment override") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "mfield-report-test";
  fs::remove_all(base);

  const fs::path fallback = base / "fallback";
  const fs::path forced = base / "forced";

  unsetenv("MFIELD_OUTPUT_DIR");
  CHECK(resolve_output_dir(fallback.string()) == fallback);
  CHECK(fs::is_directory(fallback));

  setenv("MFIELD_OUTPUT_DIR", forced.string().c_str(), 1);
  CHECK(resolve_output_dir(fallback.string()) == forced);
  CHECK(fs::is_directory(forced));
  unsetenv("MFIELD_OUTPUT_DIR");

  fs::remove_all(base);
}
