#include "gth/thermostat.hpp"

#include <cmath>

#include "gth/rng.hpp"

namespace gth {

Vec2 twist_apply(const SurfacePoint& p, const Vec2& v, const Vec2& e, const Vec2& u) {
  double vv = metric_inner(p, v, v);
  if (vv <= 0.0) throw std::domain_error("twist at a zero velocity");
  double vu = metric_inner(p, v, u);
  double eu = metric_inner(p, e, u);
  return {(vu * e.u1 - eu * v.u1) / vv, (vu * e.u2 - eu * v.u2) / vv};
}

Vec2 y_twist(const PotentialField& field, double lambda, const PhasePoint& theta,
             const Vec2& u) {
  Vec2 e = field.eval_E(lambda, theta.p);
  return twist_apply(theta.p, theta.v, e, u);
}

Vec2 z_twist(const PotentialField& field, const PhasePoint& theta, const Vec2& u) {
  Vec2 e = field.grad(theta.p);
  return twist_apply(theta.p, theta.v, e, u);
}

PhaseVector to_phase_vector(const PhasePoint& theta, const Vec2& dp, const Vec2& dv) {
  return {dp, dv + christoffel(theta.p, dp, theta.v)};
}

void from_phase_vector(const PhasePoint& theta, const PhaseVector& xi, Vec2& dp, Vec2& dv) {
  dp = xi.h;
  dv = xi.v - christoffel(theta.p, xi.h, theta.v);
}

PhaseVector thermostat_field(const PotentialField& field, double lambda,
                             const PhasePoint& theta) {
  return {theta.v, y_twist(field, lambda, theta, theta.v)};
}

double omega0(const PhasePoint& theta, const PhaseVector& x1, const PhaseVector& x2) {
  return metric_inner(theta.p, x1.h, x2.v) - metric_inner(theta.p, x1.v, x2.h);
}

double kappa(const PotentialField& field, double lambda, const PhasePoint& theta,
             const PhaseVector& x1, const PhaseVector& x2) {
  Vec2 yx1 = y_twist(field, lambda, theta, x1.h);
  return metric_inner(theta.p, yx1, x2.h);
}

double lemma3_residual(const PotentialField& field, double lambda, const PhasePoint& theta,
                       int probes, uint64_t seed, double corrupt) {
  Rng rng(seed);
  PhaseVector F = thermostat_field(field, lambda, theta);
  if (corrupt != 0.0) {
    Vec2 vperp{-theta.v.u2, theta.v.u1};
    F.v = F.v + corrupt * vperp;
  }
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    PhaseVector xi{{rng.normal(), rng.normal()}, {rng.normal(), rng.normal()}};
    double r = std::abs(dH(theta, xi) - twisted_omega(field, lambda, theta, F, xi));
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace gth
