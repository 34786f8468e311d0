#include "multifield/legendre.hpp"

#include <cmath>
#include <string>

#include "multifield/errors.hpp"

namespace multifield {

VecX chi_rate_gradient(const MaterialModel& m, const VecX& nu,
                       const VecX& nudot) {
  const int k = static_cast<int>(nu.size());
  const DVecX nu_d = lift(nu);
  VecX g(k);
  for (int i = 0; i < k; ++i) {
    DVecX nd = lift(nudot);
    nd(i).d = 1.0;
    g(i) = tangent(m.chi(nu_d, nd));
  }
  return g;
}

namespace {

// rho0 * grad_nudot(chi) - mu, projected onto the tangent space.
VecX momentum_residual(const MaterialModel& m, double rho0, const VecX& nu,
                       const MatX& tp, const VecX& nudot, const VecX& mu) {
  return tp * (rho0 * chi_rate_gradient(m, nu, nudot) - mu);
}

}  // namespace

VecX invert_micro_momentum(const MaterialModel& m, double rho0, const VecX& nu,
                           const VecX& mu, long node) {
  const int k = static_cast<int>(nu.size());
  const MatX tp = m.manifold.tangent_projector(nu);
  const MatX np = MatX::Identity(k, k) - tp;
  const double tol = 1e-12 * std::max(1.0, mu.norm());

  VecX nudot = tp * (mu / rho0);
  VecX r = momentum_residual(m, rho0, nu, tp, nudot, mu);

  for (int it = 0; it < 50; ++it) {
    if (r.norm() <= tol) return nudot;

    // Jacobian of the residual by central differences of the dual gradient.
    const double h = 1e-6 * std::max(1.0, nudot.norm());
    MatX jac(k, k);
    for (int j = 0; j < k; ++j) {
      VecX fwd = nudot, bwd = nudot;
      fwd(j) += h;
      bwd(j) -= h;
      jac.col(j) = (momentum_residual(m, rho0, nu, tp, fwd, mu) -
                    momentum_residual(m, rho0, nu, tp, bwd, mu)) /
                   (2.0 * h);
    }

    const VecX step = (tp * jac * tp + np).partialPivLu().solve(-r);
    double alpha = 1.0;
    for (int cut = 0; cut < 30; ++cut) {
      const VecX cand = tp * (nudot + alpha * step);
      const VecX rc = momentum_residual(m, rho0, nu, tp, cand, mu);
      if (rc.norm() < r.norm() || rc.norm() <= tol) {
        nudot = cand;
        r = rc;
        break;
      }
      alpha *= 0.5;
      if (cut == 29) {
        throw LegendreError(
            m.id + ": momentum inversion stalled (damping exhausted)", node,
            r.norm());
      }
    }
  }
  if (r.norm() <= tol) return nudot;
  throw LegendreError(m.id + ": momentum inversion did not converge", node,
                      r.norm());
}

DVecX invert_micro_momentum_dual(const MaterialModel& m, const Dual& rho0,
                                 const DVecX& nu, const DVecX& mu) {
  if (!m.manifold.flat())
    throw ConfigError(
        "invert_micro_momentum_dual supports flat manifolds only");
  const int k = static_cast<int>(nu.size());
  const VecX nu_v = values(nu);
  const VecX mu_v = values(mu);
  const double rho_v = value(rho0);

  // Values through the exact Newton path; iterating on a differenced
  // gradient instead would floor the residual at the truncation error of
  // the difference, above the inversion tolerance.
  const VecX nudot_v = invert_micro_momentum(m, rho_v, nu_v, mu_v);

  // Tangents from the implicit function theorem on
  //   rho0 grad_nudot chi(nu, nudot) = mu:
  //   rho H dnudot = dmu - drho g - rho (d_nu grad chi)[dnu],
  // with H the nudot Hessian of chi. Differencing the exact gradient only
  // pollutes the tangent at the truncation level, not the value.
  const VecX g = chi_rate_gradient(m, nu_v, nudot_v);
  const double h = 1e-6 * std::max(1.0, nudot_v.norm());
  MatX hess(k, k);
  for (int j = 0; j < k; ++j) {
    VecX fwd = nudot_v, bwd = nudot_v;
    fwd(j) += h;
    bwd(j) -= h;
    hess.col(j) = (chi_rate_gradient(m, nu_v, fwd) -
                   chi_rate_gradient(m, nu_v, bwd)) /
                  (2.0 * h);
  }

  VecX rhs = tangents(mu) - tangent(rho0) * g;
  const VecX dnu = tangents(nu);
  if (dnu.norm() > 0.0) {
    const double hn = 1e-6 / std::max(1.0, dnu.norm());
    rhs -= rho_v *
           (chi_rate_gradient(m, (nu_v + hn * dnu).eval(), nudot_v) -
            chi_rate_gradient(m, (nu_v - hn * dnu).eval(), nudot_v)) /
           (2.0 * hn);
  }
  const VecX dnudot = (rho_v * hess).fullPivLu().solve(rhs);

  DVecX out(k);
  for (int i = 0; i < k; ++i) out(i) = Dual(nudot_v(i), dnudot(i));
  return out;
}

}  // namespace multifield
