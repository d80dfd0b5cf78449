// Periodic-orbit continuation in lambda: Newton shooting in the universal
// cover against the fixed deck element of the free-homotopy class, plus the
// measured period curve T_lambda and the rescaled-loop energy.
#pragma once

#include <optional>
#include <vector>

#include "gth/jacobi.hpp"
#include "gth/words.hpp"

namespace gth {

struct PeriodicOrbit {
  double lambda = 0.0;
  PhasePoint anchor;     // converged section point
  Mobius deck;           // deck element closing the orbit at the anchor
  double period = 0.0;
  double residual = 0.0; // final shooting residual
  int newton_iterations = 0;
};

struct ContinuationConfig {
  IntegratorConfig integrator;
  double newton_tol = 1e-12;
  int max_newton = 25;
  int max_homotopy_depth = 6;
};

// Newton continuation of a closed geodesic to the thermostat flow at lambda.
// seed: optionally continue from an already-converged nearby orbit.
PeriodicOrbit continue_orbit(const BolzaSurface& surface, const PotentialField& field,
                             const ClosedGeodesic& geo, double lambda,
                             const ContinuationConfig& cfg,
                             const PeriodicOrbit* seed = nullptr);

// states over one period at the requested times (in [0, T])
std::vector<PhasePoint> orbit_states(const BolzaSurface& surface, const PotentialField& field,
                                     const PeriodicOrbit& orbit, const std::vector<double>& ts,
                                     const IntegratorConfig& cfg);

struct PeriodCurve {
  std::vector<double> lambdas;   // symmetric grid including 0
  std::vector<double> periods;
  double T0 = 0.0;
  double Tprime = 0.0, Tprime_err = 0.0;     // odd fit c1 h + c3 h^3
  double Tsecond = 0.0, Tsecond_err = 0.0;   // even fit c2 h^2 + c4 h^4, Tsecond = 2 c2
};

PeriodCurve period_curve(const BolzaSurface& surface, const PotentialField& field,
                         const ClosedGeodesic& geo, const std::vector<double>& lambda_steps,
                         const ContinuationConfig& cfg);

struct EnergyCurve {
  std::vector<double> lambdas;
  std::vector<double> energies;       // E_lambda of the period-T reparametrized loop
  double max_rel_dev = 0.0;           // max | E_lambda - T_lambda^2/T | / E
  double second_derivative = 0.0;     // fitted d2 E / d lambda^2 at 0
};

EnergyCurve energy_second_variation(const BolzaSurface& surface, const PotentialField& field,
                                    const ClosedGeodesic& geo,
                                    const std::vector<double>& lambda_steps,
                                    const ContinuationConfig& cfg, int quad_nodes = 64);

// least-squares fit helpers shared with the entropy module
struct OddEvenFit {
  double c1 = 0, c1_err = 0;  // odd linear coefficient
  double c2 = 0, c2_err = 0;  // even quadratic coefficient
};
OddEvenFit fit_odd_even(const std::vector<double>& h, const std::vector<double>& plus,
                        const std::vector<double>& minus, double at0);

}  // namespace gth
