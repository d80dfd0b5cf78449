#include "gth/geometry.hpp"

namespace gth {

std::pair<cplx, cplx> Mobius::axis_endpoints() const {
  // fixed points of (a z + b)/(conj(b) z + conj(a)) = z on |z| = 1:
  //   conj(b) z^2 + (conj(a) - a) z - b = 0
  if (!is_hyperbolic()) throw std::domain_error("axis of a non-hyperbolic isometry");
  if (std::abs(b) < 1e-300) throw std::domain_error("axis of a rotation");
  cplx cb = std::conj(b);
  double t = a.real();
  double sq = std::sqrt(t * t - 1.0);
  cplx zA = (cplx(0.0, a.imag()) + sq) / cb;
  cplx zB = (cplx(0.0, a.imag()) - sq) / cb;
  zA /= std::abs(zA);
  zB /= std::abs(zB);
  // attracting fixed point has |m'(z)| > ... m'(z) = 1/(cb z + conj(a))^2, attracting iff |m'|<1
  double dA = std::abs(cb * zA + std::conj(a));
  if (dA > 1.0) return {zB, zA};
  return {zA, zB};
}

double hyp_dist(const SurfacePoint& p, const SurfacePoint& q) {
  double dx = p.x - q.x, dy = p.y - q.y;
  double num = dx * dx + dy * dy;
  double den = (1.0 - (p.x * p.x + p.y * p.y)) * (1.0 - (q.x * q.x + q.y * q.y));
  if (den <= 0.0) throw std::domain_error("hyp_dist: point outside the open unit disk");
  return std::acosh(1.0 + 2.0 * num / den);
}

std::pair<Vec2, double> log_map(const SurfacePoint& p, const SurfacePoint& q) {
  // move p to the origin; there the geodesic toward q' is radial
  Mobius to_p = Mobius::origin_to(p, 0.0);
  cplx qp = to_p.inverse().apply_z(q.z());
  double d = 2.0 * std::atanh(std::abs(qp));
  if (std::abs(qp) < 1e-300) return {Vec2{0, 0}, 0.0};
  cplx dir0 = qp / std::abs(qp) * 0.5;          // unit vector at origin (|.|_g = 1)
  cplx dirp = to_p.deriv_z(cplx(0, 0)) * dir0;  // push to p
  PhasePoint u = normalized_state({p, Vec2::of(dirp)});
  return {u.v, d};
}

PhasePoint exact_geodesic_flow(const PhasePoint& theta, double t) {
  // conjugate to the standard geodesic z(s) = tanh(s/2) through the origin
  cplx v = theta.v.z();
  double psi = std::arg(v);
  Mobius M = Mobius::origin_to(theta.p, psi);
  double z = std::tanh(t / 2);
  cplx pnew = M.apply_z(z);
  // speed of the standard curve: (1/2) sech^2(t/2); its image is automatically unit
  double sdot = 0.5 / (std::cosh(t / 2) * std::cosh(t / 2));
  cplx vnew = M.deriv_z(z) * sdot;
  PhasePoint out{SurfacePoint::of(pnew), Vec2::of(vnew)};
  return normalized_state(out);  // scrub rounding; direction is exact
}

}  // namespace gth
