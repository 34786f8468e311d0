#include "multifield/state.hpp"

#include <cmath>

namespace multifield {

CanonicalState reference_state(const MaterialModel& m, const Grid& g) {
  const long n = g.node_count();
  const int k = m.manifold.ambient_dim;
  CanonicalState s;
  s.x = MatX::Zero(3, n);
  s.p = MatX::Zero(3, n);
  s.nu = MatX::Zero(k, n);
  s.mu = MatX::Zero(k, n);
  VecX base = VecX::Zero(k);
  if (!m.manifold.flat()) base = m.manifold.project(VecX::Unit(k, 0));
  for (long j = 0; j < n; ++j) {
    s.x.col(j) = g.position(j);
    s.nu.col(j) = base;
  }
  return s;
}

namespace {

// Sum of a few low wavenumber modes along each active axis, with coefficients
// drawn once per (field component, mode). Periodic in every extent.
class ModeField {
 public:
  ModeField(std::mt19937_64& rng, const Grid& g, int components) : g_(g) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    coeffs_.resize(components);
    for (auto& c : coeffs_)
      for (int d = 0; d < g.dim; ++d)
        for (int mode = 1; mode <= 2; ++mode)
          c.push_back({d, mode, u(rng), u(rng)});
  }

  double eval(int comp, const Vec3& X) const {
    double acc = 0.0;
    for (const auto& t : coeffs_[comp]) {
      const double arg = 2.0 * M_PI * t.mode * X(t.axis) / g_.extent[t.axis];
      acc += t.cs * std::cos(arg) + t.sn * std::sin(arg);
    }
    return acc;
  }

 private:
  struct Term {
    int axis;
    int mode;
    double cs;
    double sn;
  };
  const Grid& g_;
  std::vector<std::vector<Term>> coeffs_;
};

}  // namespace

CanonicalState smooth_state(const MaterialModel& m, const Grid& g,
                            std::uint64_t seed, double amplitude) {
  const int k = m.manifold.ambient_dim;
  std::mt19937_64 rng(seed);
  ModeField fx(rng, g, 3), fp(rng, g, 3), fnu(rng, g, k), fmu(rng, g, k);

  CanonicalState s = reference_state(m, g);
  for (long j = 0; j < s.node_count(); ++j) {
    const Vec3 X = g.position(j);
    const double rho = value(m.rho0(lift(X)));
    for (int c = 0; c < 3; ++c) {
      s.x(c, j) += amplitude * fx.eval(c, X);
      s.p(c, j) += rho * amplitude * fp.eval(c, X);
    }
    VecX dnu(k), dmu(k);
    for (int c = 0; c < k; ++c) {
      dnu(c) = amplitude * fnu.eval(c, X);
      dmu(c) = rho * amplitude * fmu.eval(c, X);
    }
    const VecX nu = m.manifold.project(s.nu.col(j) + dnu);
    s.nu.col(j) = nu;
    s.mu.col(j) = m.manifold.tangent_projector(nu) * (s.mu.col(j) + dmu);
  }
  return s;
}

CanonicalState uniform_state(const MaterialModel& m, const Grid& g,
                             const VecX& nu, const VecX& mu) {
  CanonicalState s = reference_state(m, g);
  const VecX nu_on = m.manifold.project(nu);
  const VecX mu_t = m.manifold.tangent_projector(nu_on) * mu;
  for (long j = 0; j < s.node_count(); ++j) {
    s.nu.col(j) = nu_on;
    s.mu.col(j) = mu_t;
  }
  return s;
}

StatePoint random_state_point(const MaterialModel& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int k = m.manifold.ambient_dim;
  StatePoint s;
  for (int i = 0; i < 3; ++i) {
    s.X(i) = u(rng);
    s.x(i) = u(rng);
    s.xdot(i) = u(rng);
  }
  do {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        s.F(i, j) = (i == j ? 1.0 : 0.0) + 0.3 * u(rng);
  } while (s.F.determinant() < 0.2);

  VecX nu(k), nudot(k);
  for (int i = 0; i < k; ++i) {
    nu(i) = u(rng) + (m.manifold.flat() ? 0.0 : 1.0);
    nudot(i) = u(rng);
  }
  s.nu = m.manifold.project(nu);
  s.nudot = m.manifold.tangent_projector(s.nu) * nudot;
  s.gradnu = MatX(k, 3);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 3; ++j) s.gradnu(i, j) = u(rng);
  return s;
}

}  // namespace multifield
