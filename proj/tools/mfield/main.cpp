// mfield: run verification scenarios, list the registered material models,
// or dump the derived fields of a saved state.
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "multifield/engine.hpp"
#include "multifield/errors.hpp"
#include "multifield/report.hpp"
#include "multifield/snapshot.hpp"
#include "scenario/scenario.hpp"

namespace fs = std::filesystem;
using namespace multifield;

namespace {

int cmd_list_models() {
  for (const ModelInfo& info : default_registry().list()) {
    std::cout << info.id << "  [" << info.manifold
              << (info.has_action ? ", group action" : "") << "]\n    "
              << info.summary << "\n";
  }
  return 0;
}

int cmd_run(const std::string& config, const std::string& output_override) {
  scenario::Scenario sc = scenario::load_scenario(config);
  if (!output_override.empty()) sc.output = output_override;
  const scenario::RunResult r = scenario::run_scenario(sc);

  const fs::path dir =
      resolve_output_dir(sc.output.empty() ? "runs/" + sc.name : sc.output);
  fs::create_directories(dir);
  scenario::write_reports(sc, r, dir);

  long failed = 0;
  for (const AuditRow& a : r.audits) {
    failed += a.pass ? 0 : 1;
    std::cout << (a.pass ? "[ pass ] " : "[ FAIL ] ") << a.check << "  value="
              << g17(a.value) << "  tol=" << g17(a.tolerance) << "\n";
  }
  std::cout << "scenario " << sc.name << ": " << (r.pass ? "PASS" : "FAIL")
            << " (" << (r.audits.size() - failed) << "/" << r.audits.size()
            << " audits, reports in " << dir.string() << ")\n";
  return r.pass ? 0 : 1;
}

// Integrate the scenario's initial-value problem, ignoring its checks:
// energy series to energy.csv, final state to state.snap (derive reads it).
int cmd_simulate(const std::string& config, const std::string& output_override) {
  scenario::Scenario sc = scenario::load_scenario(config);
  if (!output_override.empty()) sc.output = output_override;
  const MaterialModel m = default_registry().make(sc.model, sc.params);
  const BoundarySpec bc = scenario::scenario_boundary(m, sc);

  CanonicalState s = scenario::initial_state(m, sc.grid, sc);
  std::vector<ResidualRow> series;
  series.push_back({0.0, "energy", total_energy(m, sc.grid, bc, s), 0});
  const long stride = std::max(1L, sc.steps / 200);
  for (long i = 1; i <= sc.steps; ++i) {
    s = step(m, sc.grid, bc, s, sc.dt);
    if (i % stride == 0 || i == sc.steps)
      series.push_back({i * sc.dt, "energy", total_energy(m, sc.grid, bc, s),
                        0});
  }

  const fs::path dir =
      resolve_output_dir(sc.output.empty() ? "runs/" + sc.name : sc.output);
  fs::create_directories(dir);
  write_residual_csv(dir / "energy.csv", series);
  write_snapshot_file((dir / "state.snap").string(), sc.model, sc.grid, s);
  std::cout << "simulated " << sc.steps << " steps of " << sc.name
            << "; state and energy series in " << dir.string() << "\n";
  return 0;
}

// Per-node derived fields of a snapshot, as one wide CSV on stdout. Rates
// come from the same momentum inversion the engine uses; Dirichlet data, if
// any face needs it, pins to the reference configuration.
int cmd_derive(const std::string& model_id, const std::string& state_file) {
  const Snapshot snap = read_snapshot_file(state_file);
  if (snap.model != model_id)
    throw ConfigError("snapshot was written by model '" + snap.model +
                      "', not '" + model_id + "'");
  const MaterialModel m = default_registry().make(model_id);
  const Grid& g = snap.grid;
  const int k = m.manifold.ambient_dim;

  BoundarySpec bc;
  bc.xbar = [](const Vec3& X) { return X; };
  const VecX nu0 = m.manifold.flat() ? VecX(VecX::Zero(k))
                                     : m.manifold.project(VecX::Unit(k, 0));
  bc.nubar = [nu0](const Vec3&) { return nu0; };

  const HamiltonParts parts = hamilton_parts(m, g, bc, snap.state);
  const StateGeometry geo = state_geometry(m, g, snap.state);

  std::cout << "node,lagrangian,kappa,energy";
  for (int i = 0; i < 3; ++i) std::cout << ",mom" << i;
  for (int i = 0; i < k; ++i) std::cout << ",micromom" << i;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) std::cout << ",P" << i << j;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 3; ++j) std::cout << ",S" << i << j;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) std::cout << ",Esh" << i << j;
  std::cout << "\n";

  for (long n = 0; n < g.node_count(); ++n) {
    const StatePoint sp = state_point_at(m, g, snap.state, geo, n,
                                         parts.xdot.col(n), parts.nudot.col(n));
    const DerivedPoint d = derived_fields(m, sp);
    std::cout << n << ',' << g17(d.lagrangian) << ',' << g17(d.kappa) << ','
              << g17(d.energy_density);
    for (int i = 0; i < 3; ++i) std::cout << ',' << g17(d.momentum(i));
    for (int i = 0; i < k; ++i) std::cout << ',' << g17(d.micro_momentum(i));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) std::cout << ',' << g17(d.piola(i, j));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < 3; ++j) std::cout << ',' << g17(d.microstress(i, j));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) std::cout << ',' << g17(d.eshelby(i, j));
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multifield verification driver"};
  app.require_subcommand(1);

  std::string config, output_override;
  CLI::App* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("config", config, "scenario JSON path")->required();
  run->add_option("-o,--output", output_override,
                  "report directory (default runs/<name>; the "
                  "MFIELD_OUTPUT_DIR variable overrides either)");

  std::string sim_config, sim_output;
  CLI::App* sim = app.add_subcommand(
      "simulate", "integrate a scenario's initial-value problem");
  sim->add_option("config", sim_config, "scenario JSON path")->required();
  sim->add_option("-o,--output", sim_output, "report directory");

  app.add_subcommand("list-models", "print the model registry");

  std::string model_id, state_file;
  CLI::App* derive =
      app.add_subcommand("derive", "derived fields of a saved state, as CSV");
  derive->add_option("model", model_id, "model id the state belongs to")
      ->required();
  derive->add_option("state", state_file, "snapshot file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config, output_override);
    if (sim->parsed()) return cmd_simulate(sim_config, sim_output);
    if (derive->parsed()) return cmd_derive(model_id, state_file);
    return cmd_list_models();
  } catch (const ConfigError& e) {
    std::cerr << "error[config]: " << e.what() << "\n";
    return 2;
  } catch (const RegistrationError& e) {
    std::cerr << "error[registration]: " << e.what() << "\n";
    return 3;
  } catch (const LegendreError& e) {
    std::cerr << "error[numeric]: " << e.what() << "\n";
    return 4;
  } catch (const EvalError& e) {
    std::cerr << "error[numeric]: " << e.what() << "\n";
    return 4;
  } catch (const CausticError& e) {
    std::cerr << "error[caustic]: " << e.what() << "\n";
    return 5;
  } catch (const FunctionalClassError& e) {
    std::cerr << "error[functional-class]: " << e.what() << "\n";
    return 6;
  }
}
