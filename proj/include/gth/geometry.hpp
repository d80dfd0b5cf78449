// Poincare-disk model of the hyperbolic plane at curvature -1.
// Conformal factor 2/(1-|z|^2); isometries are SU(1,1) Mobius maps.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace gth {

using cplx = std::complex<double>;

struct SurfacePoint {
  double x = 0.0, y = 0.0;
  cplx z() const { return {x, y}; }
  static SurfacePoint of(cplx z) { return {z.real(), z.imag()}; }
};

// coordinate components of a tangent vector (at some base point)
struct Vec2 {
  double u1 = 0.0, u2 = 0.0;
  cplx z() const { return {u1, u2}; }
  static Vec2 of(cplx z) { return {z.real(), z.imag()}; }
  Vec2 operator+(Vec2 o) const { return {u1 + o.u1, u2 + o.u2}; }
  Vec2 operator-(Vec2 o) const { return {u1 - o.u1, u2 - o.u2}; }
  Vec2 operator*(double c) const { return {c * u1, c * u2}; }
  Vec2 operator-() const { return {-u1, -u2}; }
};
inline Vec2 operator*(double c, Vec2 v) { return v * c; }

struct PhasePoint {
  SurfacePoint p;
  Vec2 v;
};

inline void require_in_disk(const SurfacePoint& p) {
  if (p.x * p.x + p.y * p.y >= 1.0)
    throw std::domain_error("point outside the open unit disk");
}

// conformal scale mu(p) = 2/(1-|p|^2); the metric is mu^2 * euclidean
inline double conformal_factor(const SurfacePoint& p) {
  double r2 = p.x * p.x + p.y * p.y;
  if (r2 >= 1.0) throw std::domain_error("point outside the open unit disk");
  return 2.0 / (1.0 - r2);
}

inline double metric_inner(const SurfacePoint& p, const Vec2& u, const Vec2& w) {
  double mu = conformal_factor(p);
  return mu * mu * (u.u1 * w.u1 + u.u2 * w.u2);
}

inline double metric_norm(const SurfacePoint& p, const Vec2& u) {
  return std::sqrt(metric_inner(p, u, u));
}

// Christoffel contraction Gamma(p)(a, b), symmetric in (a, b).
// For g = e^{2phi} delta with phi = log(2/(1-r^2)):
//   Gamma^1 = phi_x(a1 b1 - a2 b2) + phi_y(a1 b2 + a2 b1)
//   Gamma^2 = phi_y(a2 b2 - a1 b1) + phi_x(a1 b2 + a2 b1)
inline Vec2 christoffel(const SurfacePoint& p, const Vec2& a, const Vec2& b) {
  double A = 1.0 - (p.x * p.x + p.y * p.y);
  double fx = 2.0 * p.x / A, fy = 2.0 * p.y / A;
  double s11 = a.u1 * b.u1, s22 = a.u2 * b.u2, s12 = a.u1 * b.u2 + a.u2 * b.u1;
  return {fx * (s11 - s22) + fy * s12, fy * (s22 - s11) + fx * s12};
}

// DV/dt = dV/dt + Gamma(p)(pdot, V)
inline Vec2 covariant_derivative(const SurfacePoint& p, const Vec2& pdot,
                                 const Vec2& value, const Vec2& ddt_value) {
  require_in_disk(p);
  return ddt_value + christoffel(p, pdot, value);
}

// constant-curvature tensor, K = -1:  R(u,w)z = K(<u,z> w - <w,z> u)
inline Vec2 curvature_op(const SurfacePoint& p, const Vec2& u, const Vec2& w,
                         const Vec2& z) {
  double K = -1.0;
  double uz = metric_inner(p, u, z), wz = metric_inner(p, w, z);
  return {K * (uz * w.u1 - wz * u.u1), K * (uz * w.u2 - wz * u.u2)};
}

// orientation-preserving disk isometry z -> (a z + b)/(conj(b) z + conj(a)),
// |a|^2 - |b|^2 = 1
struct Mobius {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  static Mobius identity() { return {}; }

  // hyperbolic translation by length ell along the +x axis
  static Mobius translation_x(double ell) {
    return {cplx(std::cosh(ell / 2), 0.0), cplx(std::sinh(ell / 2), 0.0)};
  }
  // rotation about the origin by angle psi
  static Mobius rotation(double psi) {
    return {cplx(std::cos(psi / 2), std::sin(psi / 2)), cplx(0.0, 0.0)};
  }
  // isometry taking the origin to p with derivative along direction e^{i psi}
  static Mobius origin_to(const SurfacePoint& p, double psi) {
    double s = 1.0 / std::sqrt(1.0 - (p.x * p.x + p.y * p.y));
    Mobius t{cplx(s, 0.0), p.z() * s};
    return t.compose(rotation(psi));
  }

  Mobius compose(const Mobius& o) const {  // this after o:  (this*o)(z) = this(o(z))
    return {a * o.a + b * std::conj(o.b), a * o.b + b * std::conj(o.a)};
  }
  Mobius inverse() const { return {std::conj(a), -b}; }

  cplx apply_z(cplx z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }
  SurfacePoint apply(const SurfacePoint& p) const { return SurfacePoint::of(apply_z(p.z())); }
  cplx deriv_z(cplx z) const {
    cplx d = std::conj(b) * z + std::conj(a);
    return 1.0 / (d * d);
  }
  cplx second_deriv_z(cplx z) const {
    cplx d = std::conj(b) * z + std::conj(a);
    return -2.0 * std::conj(b) / (d * d * d);
  }
  PhasePoint apply(const PhasePoint& th) const {
    cplx z = th.p.z();
    return {SurfacePoint::of(apply_z(z)), Vec2::of(deriv_z(z) * th.v.z())};
  }

  double trace() const { return 2.0 * a.real(); }
  bool is_hyperbolic() const { return std::abs(trace()) > 2.0; }

  // renormalize |a|^2-|b|^2 to 1 (drift control after long products)
  Mobius normalized() const {
    double n = std::sqrt(std::norm(a) - std::norm(b));
    return {a / n, b / n};
  }

  // boundary fixed points of a hyperbolic element: (repelling, attracting)
  std::pair<cplx, cplx> axis_endpoints() const;
};

// hyperbolic distance
double hyp_dist(const SurfacePoint& p, const SurfacePoint& q);

// initial unit tangent at p of the geodesic toward q, plus the distance
std::pair<Vec2, double> log_map(const SurfacePoint& p, const SurfacePoint& q);

// closed-form geodesic flow: theta must be unit; group law and reversibility exact
PhasePoint exact_geodesic_flow(const PhasePoint& theta, double t);

// make |v|_g = 1 at theta.p keeping direction
inline PhasePoint normalized_state(const PhasePoint& th) {
  double n = metric_norm(th.p, th.v);
  return {th.p, {th.v.u1 / n, th.v.u2 / n}};
}

// unit tangent at p with metric angle psi (measured against the x axis)
inline PhasePoint unit_state(const SurfacePoint& p, double psi) {
  double mu = conformal_factor(p);
  return {p, {std::cos(psi) / mu, std::sin(psi) / mu}};
}

// Klein-model coordinates (geodesics are straight chords there)
inline cplx poincare_to_klein(cplx z) { return 2.0 * z / (1.0 + std::norm(z)); }
inline cplx klein_to_poincare(cplx z) {
  return z / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(z))));
}

}  // namespace gth
