// Check runners behind `mfield run`. Every tolerance is a named constant
// here, not a config knob: scenarios choose what to check and on which
// setting, never how strictly.
#include <cmath>
#include <random>

#include "multifield/bracket.hpp"
#include "multifield/errors.hpp"
#include "multifield/hj.hpp"
#include "multifield/identities.hpp"
#include "multifield/symmetry.hpp"
#include "scenario/scenario.hpp"

namespace multifield::scenario {

namespace {

constexpr double kAdFdStep = 1e-5;
constexpr double kAdFdTol = 1e-6;
constexpr double kHamLagTol = 1e-10;
constexpr double kOrderMin = 1.0;
constexpr double kDriftTol = 1e-6;
constexpr double kInvarianceTol = 1e-10;
constexpr double kIdentityTol = 1e-10;
constexpr double kFlagLevel = 1e-3;
constexpr double kIsolationFrac = 0.1;
constexpr double kBilinearTol = 1e-12;
constexpr double kPairingTol = 1e-8;
constexpr double kJacobiTol = 1e-8;
constexpr double kHJPointTol = 1e-8;
constexpr double kActionOrderMin = 1.9;
constexpr double kPeriodTol = 1e-3;

struct Ctx {
  const Scenario& sc;
  const MaterialModel& m;
  const BoundarySpec& bc;
  RunResult& out;
};

void audit(Ctx& c, const std::string& name, double value, double tol,
           bool pass) {
  c.out.audits.push_back({name, value, tol, pass});
}
void audit_le(Ctx& c, const std::string& name, double value, double tol) {
  audit(c, name, value, tol, value <= tol);
}
void audit_order(Ctx& c, const std::string& name, double value, double min) {
  audit(c, name, value, min, value >= min);
}

MaterialModel check_model(Ctx& c, const std::string& id) {
  return default_registry().make(id, id == c.sc.model ? c.sc.params
                                                      : ModelParams{});
}

// Dyadically refined copy: doubled cell count per active axis, so node
// counts differ between periodic (n cells) and bounded (n - 1 cells) axes.
Grid refined(const Grid& base, int level) {
  std::array<int, 3> nodes = base.nodes;
  for (int d = 0; d < base.dim; ++d)
    nodes[d] = base.periodic_axis(d) ? base.nodes[d] << level
                                     : ((base.nodes[d] - 1) << level) + 1;
  return Grid::make(base.dim, nodes, base.extent, base.faces);
}

double l2(const VecX& r, const Grid& g) {
  return std::sqrt(r.squaredNorm() * g.cell_volume());
}
double l2(const MatX& r, const Grid& g) {
  return std::sqrt(r.squaredNorm() * g.cell_volume());
}

// Central finite difference of the Lagrangian under an arbitrary state bump.
template <typename Bump>
double fd_lagrangian(const MaterialModel& m, const StatePoint& s, Bump bump) {
  StatePoint hi = s, lo = s;
  bump(hi, kAdFdStep);
  bump(lo, -kAdFdStep);
  return (lagrangian_density(m, hi) - lagrangian_density(m, lo)) /
         (2.0 * kAdFdStep);
}

void check_ad_vs_fd(Ctx& c, const CheckSpec& spec) {
  std::vector<std::string> ids =
      spec.models.empty() ? std::vector<std::string>{c.sc.model} : spec.models;
  for (const std::string& id : ids) {
    MaterialModel m = check_model(c, id);
    std::mt19937_64 rng(c.sc.seed);
    double worst = 0.0;
    auto rel = [&](double ad, double fd) {
      worst = std::max(worst, std::abs(ad - fd) / (1.0 + std::abs(fd)));
    };
    for (int t = 0; t < spec.samples; ++t) {
      const StatePoint sp = random_state_point(m, rng);
      const DerivedPoint d = derived_fields(m, sp);
      for (int i = 0; i < 3; ++i) {
        rel(d.momentum(i), fd_lagrangian(m, sp, [i](StatePoint& s, double h) {
              s.xdot(i) += h;
            }));
        for (int j = 0; j < 3; ++j)
          rel(-d.piola(i, j),
              fd_lagrangian(m, sp, [i, j](StatePoint& s, double h) {
                s.F(i, j) += h;
              }));
      }
      for (int i = 0; i < m.manifold.ambient_dim; ++i)
        for (int j = 0; j < 3; ++j)
          rel(-d.microstress(i, j),
              fd_lagrangian(m, sp, [i, j](StatePoint& s, double h) {
                s.gradnu(i, j) += h;
              }));
    }
    audit_le(c, "ad-vs-fd:" + id, worst, kAdFdTol);
  }
}

void check_hamilton_lagrange(Ctx& c, const CheckSpec&) {
  const Grid& g = c.sc.grid;
  CanonicalState s = initial_state(c.m, g, c.sc);
  const RhsResult rhs = hamilton_rhs(c.m, g, c.bc, s);
  const LagrangeAssembly la = lagrange_assembly(c.m, g, s, rhs.xdot, rhs.nudot);
  double worst = 0.0;
  for (long j = 0; j < g.node_count(); ++j) {
    if (!g.interior(j)) continue;
    worst = std::max(worst, (rhs.pdot.col(j) - la.pdot.col(j)).norm());
    VecX lm = la.mudot.col(j);
    if (!c.m.manifold.flat())
      lm = (c.m.manifold.tangent_projector(s.nu.col(j)) * lm).eval();
    worst = std::max(worst, (rhs.mudot.col(j) - lm).norm());
  }
  audit_le(c, "hamilton-lagrange", worst, kHamLagTol);
}

void check_energy(Ctx& c, const CheckSpec& spec) {
  std::vector<double> hs, errs;
  for (int level = 0; level < spec.refinements; ++level) {
    const Grid g = refined(c.sc.grid, level);
    const double dt = c.sc.dt / (1 << level);
    CanonicalState s0 = initial_state(c.m, g, c.sc);
    CanonicalState s1 = step(c.m, g, c.bc, s0, dt);
    CanonicalState s2 = step(c.m, g, c.bc, s1, dt);
    const double norm = l2(energy_balance_residual(c.m, g, c.bc, s0, s1, s2,
                                                   dt),
                           g);
    c.out.residuals.push_back({0.0, "energy-balance", norm, level});
    hs.push_back(g.h[0]);
    errs.push_back(norm);
  }
  audit_order(c, "energy-order", fitted_order(hs, errs), kOrderMin);

  CanonicalState s = initial_state(c.m, c.sc.grid, c.sc);
  const double h0 = total_energy(c.m, c.sc.grid, c.bc, s);
  const double scale = std::abs(h0) > 1e-12 ? std::abs(h0) : 1.0;
  const long stride = std::max(1L, c.sc.steps / 50);
  double worst = 0.0;
  for (long i = 1; i <= c.sc.steps; ++i) {
    s = step(c.m, c.sc.grid, c.bc, s, c.sc.dt);
    if (i % stride == 0 || i == c.sc.steps) {
      const double drift =
          std::abs(total_energy(c.m, c.sc.grid, c.bc, s) - h0) / scale;
      worst = std::max(worst, drift);
      c.out.residuals.push_back({i * c.sc.dt, "energy-drift", drift, 0});
    }
  }
  audit_le(c, "energy-drift", worst, kDriftTol);
}

SymmetrySpec named_symmetry(const std::string& name) {
  if (name == "translation")
    return spatial_translation(Vec3(1.0, -0.5, 0.25));
  if (name == "rotation")
    return spatial_rotation(Vec3(0.0, 0.0, 1.0), Vec3::Zero());
  if (name == "referential-translation")
    return referential_translation(Vec3(1.0, -0.5, 0.25));
  throw ConfigError("noether check: unknown symmetry '" + name +
                    "' (translation, rotation, referential-translation)");
}

void check_noether(Ctx& c, const CheckSpec& spec) {
  const SymmetrySpec sym = named_symmetry(spec.symmetry);
  const std::string tag = "noether-" + spec.symmetry;

  std::mt19937_64 rng(c.sc.seed);
  double defect = 0.0;
  for (int t = 0; t < std::max(10, spec.samples / 4); ++t) {
    const StatePoint sp = random_state_point(c.m, rng);
    defect = std::max(defect, std::abs(invariance_defect(c.m, sym, sp)));
  }
  audit_le(c, tag + "-invariance", defect, kInvarianceTol);

  std::vector<double> hs, errs;
  for (int level = 0; level < spec.refinements; ++level) {
    const Grid g = refined(c.sc.grid, level);
    const double dt = c.sc.dt / (1 << level);
    CanonicalState s0 = initial_state(c.m, g, c.sc);
    CanonicalState s1 = step(c.m, g, c.bc, s0, dt);
    CanonicalState s2 = step(c.m, g, c.bc, s1, dt);
    const double norm =
        l2(noether_residual(c.m, sym, g, s0, s1, s2, dt), g);
    c.out.residuals.push_back({0.0, tag, norm, level});
    hs.push_back(g.h[0]);
    errs.push_back(norm);
  }
  audit_order(c, tag + "-order", fitted_order(hs, errs), kOrderMin);
}

void check_identity(Ctx& c, const CheckSpec& spec, bool material) {
  const std::string base =
      material ? "material-rotation-identity" : "rotation-identity";
  std::vector<std::string> ids =
      spec.models.empty() ? std::vector<std::string>{c.sc.model} : spec.models;
  for (const std::string& id : ids) {
    MaterialModel m = check_model(c, id);
    std::mt19937_64 rng(c.sc.seed);
    double worst = 0.0;
    for (int t = 0; t < spec.samples; ++t) {
      const StatePoint sp = random_state_point(m, rng);
      const Vec3 r = material ? material_rotation_identity(m, sp)
                              : spatial_rotation_identity(m, sp);
      worst = std::max(worst, r.norm());
    }
    if (spec.expect == "break") {
      // the fixture is supposed to violate the identity visibly
      audit(c, base + ":" + id + ":flagged", worst, kFlagLevel,
            worst > kFlagLevel);
    } else {
      audit_le(c, base + ":" + id, worst, kIdentityTol);
    }
  }
}

void check_pseudomomentum(Ctx& c, const CheckSpec& spec) {
  if (c.m.homogeneous) {
    std::vector<double> hs, errs;
    for (int level = 0; level < spec.refinements; ++level) {
      const Grid g = refined(c.sc.grid, level);
      const double dt = c.sc.dt / (1 << level);
      CanonicalState s0 = initial_state(c.m, g, c.sc);
      CanonicalState s1 = step(c.m, g, c.bc, s0, dt);
      CanonicalState s2 = step(c.m, g, c.bc, s1, dt);
      const PseudomomentumResidual r =
          pseudomomentum_residual(c.m, g, s0, s1, s2, dt);
      const double norm = l2(r.residual, g);
      c.out.residuals.push_back({0.0, "pseudomomentum", norm, level});
      hs.push_back(g.h[0]);
      errs.push_back(norm);
    }
    audit_order(c, "pseudomomentum-order", fitted_order(hs, errs), kOrderMin);
    return;
  }

  // Inhomogeneous body: the explicit material force must be visible and
  // the balance including it must close to a fraction of its size.
  const Grid& g = c.sc.grid;
  CanonicalState s0 = initial_state(c.m, g, c.sc);
  CanonicalState s1 = step(c.m, g, c.bc, s0, c.sc.dt);
  CanonicalState s2 = step(c.m, g, c.bc, s1, c.sc.dt);
  const PseudomomentumResidual r =
      pseudomomentum_residual(c.m, g, s0, s1, s2, c.sc.dt);
  const double force = r.inhomogeneity.cwiseAbs().maxCoeff();
  const double closed = r.residual.cwiseAbs().maxCoeff();
  audit(c, "material-force-present", force, kFlagLevel, force > kFlagLevel);
  audit_le(c, "material-force-isolation", force > 0.0 ? closed / force : 1.0,
           kIsolationFrac);
}

void check_bracket_audit(Ctx& c, const CheckSpec&) {
  const Grid& g = c.sc.grid;
  const int k = c.m.manifold.ambient_dim;
  CanonicalState s = initial_state(c.m, g, c.sc);
  FunctionalSpec H = hamiltonian_functional();

  FunctionalSpec probe =
      c.m.action ? moment_map_functional(*c.m.action, VecX::Unit(k, k - 1))
                 : linear_momentum_functional(Vec3(0.3, -1.0, 2.0));
  const double fg = bracket(probe, H, c.m, g, c.bc, s);
  const double gf = bracket(H, probe, c.m, g, c.bc, s);
  audit(c, "bracket-antisymmetry", std::abs(fg + gf), 0.0, fg == -gf);

  std::mt19937 rng(static_cast<unsigned>(c.sc.seed));
  FunctionalSpec A =
      from_form("A", random_form(k, rng, FunctionalClass::Quadratic), k);
  FunctionalSpec B =
      from_form("B", random_form(k, rng, FunctionalClass::Linear), k);
  const double lhs =
      bracket(linear_combination("aA+bB", 0.7, A, -1.3, B), H, c.m, g, c.bc, s);
  const double rhs = 0.7 * bracket(A, H, c.m, g, c.bc, s) -
                     1.3 * bracket(B, H, c.m, g, c.bc, s);
  audit_le(c, "bracket-bilinearity", std::abs(lhs - rhs), kBilinearTol);

  const double hh = bracket(H, H, c.m, g, c.bc, s);
  audit(c, "bracket-self", std::abs(hh), 0.0, hh == 0.0);

  audit_le(c, "engine-bracket-x",
           momentum_pairing_gap(c.m, g, c.bc, s, Vec3(1.0, 0.5, -0.25)),
           kPairingTol);
  if (c.m.action)
    audit_le(c, "engine-bracket-nu",
             moment_map_pairing_gap(c.m, g, c.bc, s, VecX::Unit(k, k - 1)),
             kPairingTol);

  if (c.sc.preset == "winding" && c.m.action) {
    for (int axis = 0; axis < k; ++axis) {
      FunctionalSpec M = moment_map_functional(*c.m.action, VecX::Unit(k, axis));
      audit_le(c, "winding-bracket-" + std::to_string(axis),
               std::abs(bracket(M, H, c.m, g, c.bc, s)), kPairingTol);
    }
  }

  // Conservation of H itself along the stepped flow, per unit time.
  CanonicalState traj = s;
  const double h0 = total_energy(c.m, g, c.bc, traj);
  const double scale = std::abs(h0) > 1e-12 ? std::abs(h0) : 1.0;
  for (long i = 0; i < c.sc.steps; ++i) traj = step(c.m, g, c.bc, traj, c.sc.dt);
  const double rate = std::abs(total_energy(c.m, g, c.bc, traj) - h0) /
                      (scale * c.sc.steps * c.sc.dt);
  audit_le(c, "bracket-hdot", rate, kDriftTol);
}

void check_jacobi(Ctx& c, const CheckSpec& spec) {
  const int k = c.m.manifold.ambient_dim;
  CanonicalState s = initial_state(c.m, c.sc.grid, c.sc);
  std::mt19937 rng(static_cast<unsigned>(c.sc.seed));
  double worst = 0.0;
  for (int t = 0; t < spec.samples; ++t) {
    auto cls = [&](int i) {
      return (t + i) % 2 == 0 ? FunctionalClass::Quadratic
                              : FunctionalClass::Linear;
    };
    FunctionalSpec F = from_form("F", random_form(k, rng, cls(0)), k);
    FunctionalSpec G = from_form("G", random_form(k, rng, cls(1)), k);
    FunctionalSpec K = from_form("K", random_form(k, rng, cls(2)), k);
    worst = std::max(
        worst, std::abs(jacobi_residual(F, G, K, c.m, c.sc.grid, c.bc, s)));
  }
  audit_le(c, "jacobi", worst, kJacobiTol);
}

void check_hj(Ctx& c, const CheckSpec& spec) {
  const PointModel pm = make_point_model(c.m);
  const int k = c.m.manifold.ambient_dim;

  if (spec.mode == "free") {
    GeneratingTable tab = generating_table(
        pm, Vec3::Zero(), VecX::Zero(k), Vec3(1.0, 0.0, 0.0), VecX::Zero(k),
        1e-3, c.sc.dt, static_cast<int>(c.sc.steps));
    const HJResidual r = hj_residual(pm, tab);
    audit_le(c, "hj-free-pde", r.pde, kHJPointTol);
    audit_le(c, "hj-free-canonical", r.canonical, kHJPointTol);
    return;
  }
  if (spec.mode != "spring")
    throw ConfigError("hj-verify check: mode must be free or spring");

  std::vector<double> dts, pdes, rates;
  for (int level = 0; level < spec.refinements; ++level) {
    const double dt = c.sc.dt / (1 << level);
    const int steps = static_cast<int>(c.sc.steps) * (1 << level);
    GeneratingTable tab =
        generating_table(pm, Vec3(0.4, 0.0, 0.0), VecX::Zero(k),
                         Vec3(0.0, 0.5, 0.0), VecX::Zero(k), 1e-4, dt, steps);
    const HJResidual r = hj_residual(pm, tab);
    c.out.residuals.push_back({0.0, "hj-pde", r.pde, level});
    const double ar = action_rate_defect(pm, tab);
    c.out.residuals.push_back({0.0, "hj-action-rate", ar, level});
    dts.push_back(dt);
    pdes.push_back(r.pde);
    rates.push_back(ar);
  }
  audit_order(c, "hj-pde-order", fitted_order(dts, pdes), kOrderMin);
  audit_order(c, "hj-action-order", fitted_order(dts, rates), kActionOrderMin);

  const double kk = c.sc.params.count("k") ? c.sc.params.at("k") : 1.0;
  const double rho = value(c.m.rho0(lift(Vec3::Zero().eval())));
  const double expected = 2.0 * M_PI * std::sqrt(rho / kk);
  PointState st;
  st.x = Vec3(1.0, 0.0, 0.0);
  st.nu = VecX::Zero(k);
  st.mu = VecX::Zero(k);
  const double T =
      measured_period(pm, st, c.sc.dt,
                      static_cast<int>(2.5 * expected / c.sc.dt), Vec3::Zero(),
                      Vec3(1.0, 0.0, 0.0));
  audit_le(c, "hj-period", std::abs(T - expected) / expected, kPeriodTol);
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
  RunResult out;
  const MaterialModel m = default_registry().make(sc.model, sc.params);
  const BoundarySpec bc = scenario_boundary(m, sc);
  Ctx c{sc, m, bc, out};

  for (const CheckSpec& spec : sc.checks) {
    if (spec.name == "ad-vs-fd")
      check_ad_vs_fd(c, spec);
    else if (spec.name == "hamilton-lagrange")
      check_hamilton_lagrange(c, spec);
    else if (spec.name == "energy")
      check_energy(c, spec);
    else if (spec.name == "noether")
      check_noether(c, spec);
    else if (spec.name == "rotation-identity")
      check_identity(c, spec, false);
    else if (spec.name == "material-rotation-identity")
      check_identity(c, spec, true);
    else if (spec.name == "pseudomomentum")
      check_pseudomomentum(c, spec);
    else if (spec.name == "bracket-audit")
      check_bracket_audit(c, spec);
    else if (spec.name == "jacobi")
      check_jacobi(c, spec);
    else if (spec.name == "hj-verify")
      check_hj(c, spec);
    else
      throw ConfigError("unknown check '" + spec.name + "'");
  }

  for (const AuditRow& a : out.audits) out.pass = out.pass && a.pass;
  return out;
}

}  // namespace multifield::scenario
