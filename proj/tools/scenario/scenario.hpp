#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "multifield/engine.hpp"
#include "multifield/material.hpp"
#include "multifield/report.hpp"

namespace multifield::scenario {

// One verification check requested by a scenario file. Most fields are
// meaningful only for some check kinds; the loader rejects combinations the
// runner would ignore silently.
struct CheckSpec {
  std::string name;                 // energy, noether, jacobi, ...
  std::string symmetry;             // noether: translation | rotation
  std::string expect = "hold";      // identity checks: hold | break
  std::string mode;                 // hj-verify: free | spring
  int refinements = 3;              // ladder depth for order checks
  int samples = 100;                // pointwise sampling count
  std::vector<std::string> models;  // override the scenario model per check
};

struct Scenario {
  std::string name;
  std::string model;
  ModelParams params;
  Grid grid;
  double dt = 1e-3;
  long steps = 100;
  std::uint64_t seed = 0;
  std::string preset = "smooth";  // smooth | reference | uniform | winding
  double amplitude = 0.1;
  VecX uniform_nu, uniform_mu;    // preset "uniform"
  int winding_q = 1;              // preset "winding"
  double winding_omega = 0.5;
  Vec3 traction = Vec3::Zero();   // constant natural-face traction, optional
  bool has_traction = false;
  std::string output;             // report directory; default runs/<name>
  std::vector<CheckSpec> checks;
};

// Parse and validate a scenario file. Throws ConfigError with a message
// prefixed by the failure class: missing file, JSON parse error, schema
// violation (unknown key, wrong type, bad enum value), or an invalid grid.
Scenario load_scenario(const std::filesystem::path& path);

// Boundary data implied by the scenario: Dirichlet faces pin to the
// reference configuration, and a configured traction becomes the linear
// surface potential that reproduces it.
BoundarySpec scenario_boundary(const MaterialModel& m, const Scenario& sc);

// The scenario's initial state on its grid (or a refined copy of it).
CanonicalState initial_state(const MaterialModel& m, const Grid& g,
                             const Scenario& sc);

struct RunResult {
  bool pass = true;
  std::vector<ResidualRow> residuals;
  std::vector<AuditRow> audits;
};

// Execute every requested check. Numerical tolerances are pinned inside the
// check implementations, not configurable. Throws on configuration or
// prerequisite violations; a finished run with failing audits returns
// pass = false instead.
RunResult run_scenario(const Scenario& sc);

// residuals.csv, audits.csv and summary.csv under dir. Every number is
// printed in round-trippable form and nothing time- or host-dependent is
// written, so reruns with the same seed are byte-identical.
void write_reports(const Scenario& sc, const RunResult& r,
                   const std::filesystem::path& dir);

}  // namespace multifield::scenario
