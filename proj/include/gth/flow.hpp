// Numerical thermostat flow on the unit tangent bundle: adaptive RKF78 with
// side-crossing events and deck transport (fundamental-domain mode) or cheap
// re-centering deck moves (universal-cover mode, used by the orbit shooting).
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gth/bolza.hpp"
#include "gth/field.hpp"
#include "gth/geometry.hpp"
#include "gth/words.hpp"

namespace gth {

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double dt_init = 1e-3;
  double dt_max = 0.05;
  double crossing_tol = 1e-12;  // bisection tolerance in crossing time
};

struct IntegratorStats {
  long steps = 0;
  long rejected = 0;
  double max_energy_drift = 0.0;  // max | |v|_g - 1 |
};

struct TrajectorySample {
  double t;
  PhasePoint state;
  int segment;  // index into the deck-word segmentation
};

struct Trajectory {
  double lambda = 0.0;
  std::vector<TrajectorySample> samples;
  std::vector<double> crossing_times;
  std::vector<uint8_t> crossing_letters;  // pairing applied at each crossing
  IntegratorStats stats;
};

// spec-facing flow on the quotient: state kept in the closed fundamental domain,
// side crossings located by bisection and resolved by the side pairings.
// t_end may be negative (time-reversed integration).
Trajectory integrate_flow(const BolzaSurface& surface, const PotentialField& field,
                          double lambda, const PhasePoint& theta0, double t_end,
                          const IntegratorConfig& cfg);

struct CoverResult {
  PhasePoint state;   // representative after the accumulated deck moves
  Mobius deck;        // product of applied moves: state = deck(cover endpoint)
  Word deck_word;     // letters in application order
  IntegratorStats stats;
};

// flow in the universal cover with re-centering: whenever |z| exceeds the
// trigger radius the state is pulled back into the fundamental domain and the
// move recorded. No crossing bisection; representative-independent consumers only.
CoverResult integrate_cover(const BolzaSurface& surface, const PotentialField& field,
                            double lambda, const PhasePoint& theta0, double t_end,
                            const IntegratorConfig& cfg,
                            const std::vector<double>* checkpoints = nullptr,
                            const std::function<void(double, const PhasePoint&)>* on_checkpoint = nullptr,
                            bool recenter = true);

// coordinate right-hand side of the thermostat equations (shared by the
// linearized systems)
void thermostat_rhs(const PotentialField& field, double lambda, const double y[4],
                    double dydt[4]);

}  // namespace gth
