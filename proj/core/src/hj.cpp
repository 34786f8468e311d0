#include "multifield/hj.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "multifield/errors.hpp"

namespace multifield {

namespace {

// A star separation shrinking below this fraction of its initial width
// marks a focal point.
constexpr double kCollapseRatio = 1e-2;

void g17(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

PointModel make_point_model(const MaterialModel& base) {
  PointModel pm;
  pm.base = base;
  pm.frozen_gradnu = MatX::Zero(base.manifold.ambient_dim, 3);
  return pm;
}

double point_hamiltonian(const PointModel& pm, const PointState& st) {
  return hamiltonian_density(pm.base, pm.Xref, st.x, st.p, pm.frozen_F,
                             st.nu, st.mu, pm.frozen_gradnu);
}

double point_lagrangian(const PointModel& pm, const PointState& st) {
  const Rates r =
      velocity_from_momenta(pm.base, pm.Xref, st.nu, st.p, st.mu);
  StatePoint pt;
  pt.X = pm.Xref;
  pt.x = st.x;
  pt.xdot = r.xdot;
  pt.F = pm.frozen_F;
  pt.nu = st.nu;
  pt.nudot = r.nudot;
  pt.gradnu = pm.frozen_gradnu;
  return lagrangian_density(pm.base, pt);
}

void point_step(const PointModel& pm, PointState& st, double dt) {
  const MaterialModel& m = pm.base;
  const bool curved = !m.manifold.flat();
  const double l_in = point_lagrangian(pm, st);

  const HamiltonianPartials h1 = hamiltonian_partials(
      m, pm.Xref, st.x, st.p, pm.frozen_F, st.nu, st.mu, pm.frozen_gradnu);
  st.p -= 0.5 * dt * h1.dx;
  VecX mudot = -h1.dnu;
  if (curved) mudot = (m.manifold.tangent_projector(st.nu) * mudot).eval();
  st.mu += 0.5 * dt * mudot;

  const Rates r = velocity_from_momenta(m, pm.Xref, st.nu, st.p, st.mu);
  st.x += dt * r.xdot;
  st.nu += dt * r.nudot;
  if (curved) {
    st.nu = m.manifold.project(st.nu);
    st.mu = (m.manifold.tangent_projector(st.nu) * st.mu).eval();
  }

  const HamiltonianPartials h2 = hamiltonian_partials(
      m, pm.Xref, st.x, st.p, pm.frozen_F, st.nu, st.mu, pm.frozen_gradnu);
  st.p -= 0.5 * dt * h2.dx;
  mudot = -h2.dnu;
  if (curved) mudot = (m.manifold.tangent_projector(st.nu) * mudot).eval();
  st.mu += 0.5 * dt * mudot;
  if (curved) st.mu = (m.manifold.tangent_projector(st.nu) * st.mu).eval();

  st.time += dt;
  st.S += 0.5 * dt * (l_in + point_lagrangian(pm, st));
}

GeneratingTable generating_table(const PointModel& pm, const Vec3& x0,
                                 const VecX& nu0, const Vec3& pstar,
                                 const VecX& mustar, double delta, double dt,
                                 int steps) {
  const MaterialModel& m = pm.base;
  const int k = m.manifold.ambient_dim;
  const bool curved = !m.manifold.flat();
  if (delta <= 0.0 || dt <= 0.0 || steps < 2)
    throw ConfigError("generating_table: need delta > 0, dt > 0, steps >= "
                      "2");

  GeneratingTable tab;
  tab.delta = delta;
  tab.dt = dt;
  tab.x0 = x0;
  tab.nu0 = nu0;
  tab.pstar = pstar;
  tab.mustar = mustar;

  auto seed = [&](const Vec3& x, const VecX& nu) {
    PointState st;
    st.x = x;
    st.nu = curved ? VecX(m.manifold.project(nu)) : nu;
    st.p = pstar;
    st.mu = curved
                ? VecX(m.manifold.tangent_projector(st.nu) * mustar)
                : mustar;
    st.S = pstar.dot(st.x - x0) + mustar.dot(st.nu);
    return st;
  };

  std::vector<PointState> starts;
  starts.push_back(seed(x0, nu0));
  for (int a = 0; a < 3; ++a) {
    Vec3 xm = x0, xp = x0;
    xm(a) -= delta;
    xp(a) += delta;
    starts.push_back(seed(xm, nu0));
    starts.push_back(seed(xp, nu0));
  }
  for (int i = 0; i < k; ++i) {
    VecX nm = nu0, np = nu0;
    nm(i) -= delta;
    np(i) += delta;
    starts.push_back(seed(x0, nm));
    starts.push_back(seed(x0, np));
  }

  tab.paths.assign(starts.size(), {});
  for (size_t c = 0; c < starts.size(); ++c) {
    PointState st = starts[c];
    tab.paths[c].reserve(static_cast<size_t>(steps) + 1);
    tab.paths[c].push_back(st);
    for (int n = 0; n < steps; ++n) {
      point_step(pm, st, dt);
      tab.paths[c].push_back(st);
    }
  }
  return tab;
}

HJResidual hj_residual(const PointModel& pm, const GeneratingTable& tab) {
  const MaterialModel& m = pm.base;
  const int k = m.manifold.ambient_dim;
  const bool curved = !m.manifold.flat();
  const double dt = tab.dt;
  const long last = tab.steps() - 1;

  HJResidual worst;
  for (long n = 1; n < last; ++n) {
    const PointState& c = tab.paths[0][static_cast<size_t>(n)];
    const PointState& cm = tab.paths[0][static_cast<size_t>(n - 1)];
    const PointState& cp = tab.paths[0][static_cast<size_t>(n + 1)];

    Vec3 dxS;
    for (int a = 0; a < 3; ++a) {
      const PointState& lo =
          tab.paths[static_cast<size_t>(tab.x_minus(a))][static_cast<size_t>(n)];
      const PointState& hi =
          tab.paths[static_cast<size_t>(tab.x_plus(a))][static_cast<size_t>(n)];
      const double sep = hi.x(a) - lo.x(a);
      if (std::abs(sep) < kCollapseRatio * 2.0 * tab.delta)
        throw CausticError("characteristics focused along x axis " +
                               std::to_string(a) +
                               "; shorten the window or move the seed",
                           c.time);
      dxS(a) = (hi.S - lo.S) / sep;
    }
    VecX dnuS(k);
    for (int i = 0; i < k; ++i) {
      const PointState& lo =
          tab.paths[static_cast<size_t>(tab.nu_minus(i))][static_cast<size_t>(n)];
      const PointState& hi =
          tab.paths[static_cast<size_t>(tab.nu_plus(i))][static_cast<size_t>(n)];
      const double sep = hi.nu(i) - lo.nu(i);
      if (std::abs(sep) < kCollapseRatio * 2.0 * tab.delta)
        throw CausticError("characteristics focused along nu axis " +
                               std::to_string(i) +
                               "; shorten the window or move the seed",
                           c.time);
      dnuS(i) = (hi.S - lo.S) / sep;
    }
    VecX dnuS_t = dnuS;
    if (curved)
      dnuS_t = (m.manifold.tangent_projector(c.nu) * dnuS).eval();

    const double sdot = (cp.S - cm.S) / (2.0 * dt);
    const Vec3 xdot = (cp.x - cm.x) / (2.0 * dt);
    const VecX nudot = (cp.nu - cm.nu) / (2.0 * dt);
    const double h = hamiltonian_density(m, pm.Xref, c.x, dxS, pm.frozen_F,
                                         c.nu, dnuS_t, pm.frozen_gradnu);
    const double pde =
        std::abs(sdot - xdot.dot(dxS) - nudot.dot(dnuS) + h);
    const double canonical =
        (dxS - c.p).norm() + (dnuS_t - c.mu).norm();
    worst.pde = std::max(worst.pde, pde);
    worst.canonical = std::max(worst.canonical, canonical);
  }
  return worst;
}

double action_rate_defect(const PointModel& pm, const GeneratingTable& tab) {
  const double dt = tab.dt;
  const long last = tab.steps() - 1;
  double worst = 0.0;
  for (long n = 1; n < last; ++n) {
    const PointState& c = tab.paths[0][static_cast<size_t>(n)];
    const PointState& cm = tab.paths[0][static_cast<size_t>(n - 1)];
    const PointState& cp = tab.paths[0][static_cast<size_t>(n + 1)];
    const double sdot = (cp.S - cm.S) / (2.0 * dt);
    worst = std::max(worst, std::abs(sdot - point_lagrangian(pm, c)));
  }
  return worst;
}

double measured_period(const PointModel& pm, PointState st, double dt,
                       int max_steps, const Vec3& x_eq, const Vec3& axis) {
  double c_prev = (st.x - x_eq).dot(axis);
  double first_t = 0.0;
  int first_dir = 0, crossings = 0;
  for (int n = 0; n < max_steps; ++n) {
    point_step(pm, st, dt);
    const double c = (st.x - x_eq).dot(axis);
    if ((c_prev > 0.0 && c <= 0.0) || (c_prev < 0.0 && c >= 0.0)) {
      const double t_cross =
          st.time - dt + dt * c_prev / (c_prev - c);
      const int dir = c < c_prev ? -1 : 1;
      ++crossings;
      if (crossings == 1) {
        first_t = t_cross;
        first_dir = dir;
      } else if (crossings == 3) {
        if (dir != first_dir)
          throw ConfigError("measured_period: inconsistent crossing "
                            "directions");
        return t_cross - first_t;
      }
    }
    c_prev = c;
  }
  throw ConfigError("measured_period: no full period within the window");
}

void write_generating_table(std::ostream& os, const GeneratingTable& tab) {
  const int k = tab.nu0.size() ? static_cast<int>(tab.nu0.size())
                               : static_cast<int>(tab.mustar.size());
  os << "t,char,x0,x1,x2,p0,p1,p2";
  for (int i = 0; i < k; ++i) os << ",nu" << i;
  for (int i = 0; i < k; ++i) os << ",mu" << i;
  os << ",S\n";
  for (size_t c = 0; c < tab.paths.size(); ++c) {
    for (const PointState& st : tab.paths[c]) {
      g17(os, st.time);
      os << ',' << c;
      for (int i = 0; i < 3; ++i) {
        os << ',';
        g17(os, st.x(i));
      }
      for (int i = 0; i < 3; ++i) {
        os << ',';
        g17(os, st.p(i));
      }
      for (int i = 0; i < k; ++i) {
        os << ',';
        g17(os, st.nu(i));
      }
      for (int i = 0; i < k; ++i) {
        os << ',';
        g17(os, st.mu(i));
      }
      os << ',';
      g17(os, st.S);
      os << '\n';
    }
  }
}

}  // namespace multifield
