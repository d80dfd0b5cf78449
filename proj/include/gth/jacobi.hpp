// Linearizations of the thermostat flow: the Jacobi equation integrated in a
// parallel orthonormal frame along the orbit, and the 4x4 coordinate
// variational flow (fundamental matrix), kept as two independent routes.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gth/flow.hpp"

namespace gth {

struct JacobiSolution {
  std::vector<double> ts;                          // sample times (accepted steps)
  std::vector<std::array<double, 4>> frame;        // j1, j2, dj1, dj2 per sample
  PhasePoint end_state;                            // representative at t_end
  Vec2 J_end, DJ_end;                              // coordinate components there
  IntegratorStats stats;
};

// integrate Eq-style Jacobi data (J0, DJ0 are coordinate components of the
// field and its covariant derivative at theta0); linear in (J0, DJ0)
JacobiSolution integrate_jacobi(const BolzaSurface& surface, const PotentialField& field,
                                double lambda, const PhasePoint& theta0, const Vec2& J0,
                                const Vec2& DJ0, double t_end, const IntegratorConfig& cfg,
                                bool recenter = true);

struct VariationalResult {
  PhasePoint state;       // endpoint representative
  Mobius deck;            // accumulated deck moves (state = deck(cover endpoint))
  Word deck_word;
  Eigen::Matrix4d M;      // d(endpoint)/d(initial coordinate state)
  IntegratorStats stats;
  std::vector<double> ts;
  std::vector<Eigen::Matrix4d> Ms;                 // optional per-step record
};

VariationalResult variational_flow(const BolzaSurface& surface, const PotentialField& field,
                                   double lambda, const PhasePoint& theta0, double t_end,
                                   const IntegratorConfig& cfg, bool record = false,
                                   bool recenter = true);

// 4x4 Jacobian of the coordinate thermostat field at (p, v)
Eigen::Matrix4d thermostat_jacobian(const PotentialField& field, double lambda,
                                    const PhasePoint& theta);

// differential of the deck map (p,v) -> (g p, g'(p) v), a 4x4 block matrix
Eigen::Matrix4d deck_differential(const Mobius& g, const PhasePoint& theta);

// convert a coordinate variation (dp, dv) at theta into Jacobi data and back
void variation_to_jacobi(const PhasePoint& theta, const Vec2& dp, const Vec2& dv,
                         Vec2& J, Vec2& DJ);
void jacobi_to_variation(const PhasePoint& theta, const Vec2& J, const Vec2& DJ,
                         Vec2& dp, Vec2& dv);

}  // namespace gth
