// The thermostat structures on TM: the twist operators, the energy, the
// vector field F = (v, E - <E,v>v/|v|^2) and the twisted symplectic form
// omega = omega0 + kappa, with the residual check dH = i_F omega.
#pragma once

#include <cstdint>

#include "gth/field.hpp"
#include "gth/geometry.hpp"

namespace gth {

// (<v,u> e - <e,u> v)/|v|^2 for a given field value e at theta.p
Vec2 twist_apply(const SurfacePoint& p, const Vec2& v, const Vec2& e, const Vec2& u);

// Y~_theta(u) for the field E_lambda = lambda E'_0
Vec2 y_twist(const PotentialField& field, double lambda, const PhasePoint& theta,
             const Vec2& u);

// Z_theta(u): the lambda-derivative of Y~ at lambda = 0
Vec2 z_twist(const PotentialField& field, const PhasePoint& theta, const Vec2& u);

inline double energy(const PhasePoint& theta) {
  return 0.5 * metric_inner(theta.p, theta.v, theta.v);
}

struct PhaseVector {       // element of T_theta TM in the horizontal/vertical split
  Vec2 h, v;
};

// encode a coordinate variation (dp, dv) of (p, v) as horizontal/vertical parts
PhaseVector to_phase_vector(const PhasePoint& theta, const Vec2& dp, const Vec2& dv);
// inverse of to_phase_vector
void from_phase_vector(const PhasePoint& theta, const PhaseVector& xi, Vec2& dp, Vec2& dv);

// F(theta) = (v, E_lambda - <E_lambda,v> v / |v|^2)
PhaseVector thermostat_field(const PotentialField& field, double lambda,
                             const PhasePoint& theta);

double omega0(const PhasePoint& theta, const PhaseVector& x1, const PhaseVector& x2);
double kappa(const PotentialField& field, double lambda, const PhasePoint& theta,
             const PhaseVector& x1, const PhaseVector& x2);
inline double twisted_omega(const PotentialField& field, double lambda,
                            const PhasePoint& theta, const PhaseVector& x1,
                            const PhaseVector& x2) {
  return omega0(theta, x1, x2) + kappa(field, lambda, theta, x1, x2);
}

inline double dH(const PhasePoint& theta, const PhaseVector& xi) {
  return metric_inner(theta.p, theta.v, xi.v);
}

// max |dH(xi) - omega(F, xi)| over n random probes at theta;
// corrupt adds a spurious multiple of the rotated velocity to F's vertical part
// (negative control for the test harness)
double lemma3_residual(const PotentialField& field, double lambda, const PhasePoint& theta,
                       int probes, uint64_t seed, double corrupt = 0.0);

}  // namespace gth
