#include "multifield/material.hpp"

#include <cmath>
#include <random>

#include "multifield/errors.hpp"

namespace multifield {

namespace {

double param(const ModelParams& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

VecX random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  VecX v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = n(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

MaterialModel make_m1(const ModelParams& p) {
  MaterialModel m;
  m.id = "M1";
  const double rho = param(p, "rho0", 1.0);
  const double k_w = param(p, "w_spring", 0.0);
  m.rho0 = [rho](const DVec3&) { return Dual(rho); };
  m.chi = [](const DVecX&, const DVecX& nudot) { return 0.5 * sqnorm(nudot); };
  m.e = [](const DVec3&, const DMat3& F, const DVecX& nu,
           const DMatX& gradnu) {
    DMat3 strain = F - DMat3::Identity();
    return 0.5 * sqnorm(strain) + 0.5 * sqnorm(nu) + 0.5 * sqnorm(gradnu);
  };
  if (k_w != 0.0) {
    m.w = [k_w](const DVec3& x, const DVecX&) { return 0.5 * k_w * sqnorm(x); };
  }
  m.manifold = euclidean_manifold(3);
  return m;
}

MaterialModel make_m2_director(const ModelParams& p) {
  MaterialModel m;
  m.id = "M2-director";
  const double rho = param(p, "rho0", 1.0);
  const double kf = param(p, "frank", 1.0);
  m.rho0 = [rho](const DVec3&) { return Dual(rho); };
  m.chi = [](const DVecX&, const DVecX& nudot) { return 0.5 * sqnorm(nudot); };
  m.e = [kf](const DVec3&, const DMat3&, const DVecX&, const DMatX& gradnu) {
    return 0.5 * kf * sqnorm(gradnu);
  };
  m.manifold = unit_sphere_manifold();
  m.action = so3_vector_action();
  return m;
}

MaterialModel make_m3_point(const ModelParams& p) {
  MaterialModel m;
  m.id = "M3-point";
  const double rho = param(p, "rho0", 1.0);
  const double k = param(p, "k", 1.0);
  const Vec3 x0(param(p, "x0_1", 0.0), param(p, "x0_2", 0.0),
                param(p, "x0_3", 0.0));
  m.rho0 = [rho](const DVec3&) { return Dual(rho); };
  m.chi = [](const DVecX&, const DVecX& nudot) { return 0.5 * sqnorm(nudot); };
  m.e = [](const DVec3&, const DMat3&, const DVecX&, const DMatX&) {
    return Dual(0.0);
  };
  m.w = [k, x0](const DVec3& x, const DVecX&) {
    DVec3 r = x - lift(x0);
    return 0.5 * k * sqnorm(r);
  };
  m.manifold = euclidean_manifold(3);
  return m;
}

MaterialModel make_quartic_chi(const ModelParams& p) {
  MaterialModel m;
  m.id = "quartic-chi";
  const double rho = param(p, "rho0", 1.0);
  m.rho0 = [rho](const DVec3&) { return Dual(rho); };
  m.chi = [](const DVecX&, const DVecX& nudot) {
    Dual s = sqnorm(nudot);
    return 0.25 * s * s;
  };
  m.e = [](const DVec3&, const DMat3&, const DVecX& nu, const DMatX&) {
    return 0.5 * sqnorm(nu);
  };
  m.manifold = euclidean_manifold(3);
  return m;
}

MaterialModel make_iso_solid(const ModelParams& p) {
  MaterialModel m;
  m.id = "iso-solid";
  const double rho = param(p, "rho0", 1.0);
  const double c1 = param(p, "c1", 0.5);
  const double c2 = param(p, "c2", 0.25);
  const double c3 = param(p, "c3", 0.5);
  const double c4 = param(p, "c4", 0.3);
  m.rho0 = [rho](const DVec3&) { return Dual(rho); };
  m.chi = [](const DVecX&, const DVecX& nudot) { return 0.5 * sqnorm(nudot); };
  // Invariants of F^T F and of gradnu, plus an F^T nu coupling: still blind
  // to referential rotations, and blind to simultaneous spatial rotation of
  // x and nu, but the coupling makes the rotational identity a genuine
  // cancellation between the Cauchy skew part and the action terms instead
  // of a stack of individually vanishing pieces.
  m.e = [c1, c2, c3, c4](const DVec3&, const DMat3& F, const DVecX& nu,
                         const DMatX& gradnu) {
    DMat3 c = F.transpose() * F;
    Dual i1 = dtrace(c);
    Dual det = F.determinant();
    DVec3 pullback = F.transpose() * nu.head<3>();
    return 0.5 * c1 * i1 + c2 * (det - 1.0) * (det - 1.0) +
           0.5 * c3 * sqnorm(gradnu) + 0.5 * sqnorm(nu) +
           0.5 * c4 * sqnorm(pullback);
  };
  m.manifold = euclidean_manifold(3);
  m.action = so3_vector_action();
  return m;
}

MaterialModel make_aniso_fiber(const ModelParams& p) {
  MaterialModel m;
  m.id = "aniso-fiber";
  const double rho = param(p, "rho0", 1.0);
  const Vec3 fiber =
      Vec3(param(p, "m1", 1.0), param(p, "m2", 0.3), param(p, "m3", -0.2))
          .normalized();
  m.rho0 = [rho](const DVec3&) { return Dual(rho); };
  m.chi = [](const DVecX&, const DVecX& nudot) { return 0.5 * sqnorm(nudot); };
  m.e = [fiber](const DVec3&, const DMat3& F, const DVecX& nu,
                const DMatX& gradnu) {
    DVec3 fm = F * lift(fiber);
    return 0.5 * sqnorm(fm) + 0.5 * sqnorm(nu) + 0.5 * sqnorm(gradnu);
  };
  m.manifold = euclidean_manifold(3);
  m.action = so3_vector_action();
  return m;
}

MaterialModel make_skew_broken(const ModelParams& p) {
  MaterialModel m;
  m.id = "skew-broken";
  const double rho = param(p, "rho0", 1.0);
  m.rho0 = [rho](const DVec3&) { return Dual(rho); };
  m.chi = [](const DVecX&, const DVecX& nudot) { return 0.5 * sqnorm(nudot); };
  // Picks out a single mixed component of F; no rotational invariance at all.
  m.e = [](const DVec3&, const DMat3& F, const DVecX& nu, const DMatX&) {
    return F(0, 1) * F(0, 1) + 0.5 * sqnorm(nu);
  };
  m.manifold = euclidean_manifold(3);
  m.action = so3_vector_action();
  return m;
}

MaterialModel make_m1_rho_gradient(const ModelParams& p) {
  MaterialModel m = make_m1(p);
  m.id = "M1-rho-gradient";
  const double rho = param(p, "rho0", 1.0);
  const double amp = param(p, "rho_amp", 0.2);
  const double wavelength = param(p, "rho_wavelength", 2.0 * M_PI);
  m.rho0 = [rho, amp, wavelength](const DVec3& X) {
    return rho + amp * sin(X(0) * (2.0 * M_PI / wavelength));
  };
  m.homogeneous = false;
  return m;
}

}  // namespace

void check_admissibility(const MaterialModel& m, unsigned seed) {
  if (!m.rho0 || !m.chi || !m.e)
    throw RegistrationError(m.id + ": rho0, chi, e closures are required");
  if (m.manifold.ambient_dim < 1)
    throw RegistrationError(m.id + ": manifold has no ambient dimension");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int k = m.manifold.ambient_dim;

  for (int trial = 0; trial < 16; ++trial) {
    VecX raw(k);
    for (int i = 0; i < k; ++i) raw(i) = u(rng) + (trial == 0 ? 1.5 : 0.0);
    const VecX nu = m.manifold.project(raw);

    DVec3 X;
    for (int i = 0; i < 3; ++i) X(i) = Dual(u(rng));
    const double r = value(m.rho0(X));
    if (!(r > 0.0))
      throw RegistrationError(m.id + ": rho0 must be positive (sampled " +
                              std::to_string(r) + ")");

    // chi(nu, 0) == 0
    const double chi0 = value(m.chi(lift(nu), lift(VecX::Zero(k).eval())));
    if (std::abs(chi0) > 1e-12)
      throw RegistrationError(m.id + ": chi(nu, 0) must vanish");

    // Convexity of chi in nudot: Hessian (sampled via nested directional
    // differences of the dual gradient) must be positive definite at a
    // nonzero sampled rate.
    const MatX tp = m.manifold.tangent_projector(nu);
    VecX nd = tp * random_unit(rng, k);
    if (nd.norm() < 1e-6) continue;  // degenerate tangent sample, resample
    nd *= 0.5 + 0.5 * std::abs(u(rng));

    MatX hess(k, k);
    const double h = 1e-5;
    for (int j = 0; j < k; ++j) {
      for (int s = 0; s < 2; ++s) {
        VecX shifted = nd;
        shifted(j) += (s == 0 ? h : -h);
        DVecX nd_d = lift(shifted);
        for (int i = 0; i < k; ++i) {
          DVecX seeded = nd_d;
          seeded(i).d = 1.0;
          const double g = tangent(m.chi(lift(nu), seeded));
          hess(i, j) = (s == 0 ? g : hess(i, j) - g);
        }
      }
      hess.col(j) /= 2.0 * h;
    }
    // Test definiteness on the tangent subspace only.
    const MatX th = tp * 0.5 * (hess + hess.transpose()) * tp +
                    (MatX::Identity(k, k) - tp);
    Eigen::SelfAdjointEigenSolver<MatX> es(th);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw RegistrationError(
          m.id + ": chi is not convex in nudot at a sampled state");
  }
}

void ModelRegistry::add(const std::string& id, const std::string& summary,
                        Factory f) {
  if (entries_.count(id))
    throw RegistrationError("model id already registered: " + id);
  MaterialModel probe = f({});
  check_admissibility(probe);
  Entry e;
  e.factory = std::move(f);
  e.info = ModelInfo{id, probe.manifold.name, probe.action.has_value(), summary};
  entries_.emplace(id, std::move(e));
}

MaterialModel ModelRegistry::make(const std::string& id,
                                  const ModelParams& params) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw ConfigError("unknown model id: " + id);
  MaterialModel m = it->second.factory(params);
  m.id = id;
  return m;
}

bool ModelRegistry::contains(const std::string& id) const {
  return entries_.count(id) > 0;
}

std::vector<ModelInfo> ModelRegistry::list() const {
  std::vector<ModelInfo> out;
  out.reserve(entries_.size());
  for (const auto& [id, e] : entries_) out.push_back(e.info);
  return out;
}

ModelRegistry& default_registry() {
  static ModelRegistry* reg = [] {
    auto* r = new ModelRegistry();
    r->add("M1", "flat ambient order parameter, quadratic energies", make_m1);
    r->add("M2-director", "unit-sphere director, one-constant gradient energy",
           make_m2_director);
    r->add("M3-point", "structureless point mass in a quadratic well",
           make_m3_point);
    r->add("quartic-chi", "quartic substructural kinetic co-energy",
           make_quartic_chi);
    r->add("iso-solid", "referentially isotropic coupled solid",
           make_iso_solid);
    r->add("aniso-fiber", "fiber-reinforced solid, referentially anisotropic",
           make_aniso_fiber);
    r->add("skew-broken", "deliberately non-invariant stored energy",
           make_skew_broken);
    r->add("M1-rho-gradient", "M1 with spatially varying referential density",
           make_m1_rho_gradient);
    return r;
  }();
  return *reg;
}

}  // namespace multifield
