// Second-variation machinery along closed geodesics of the unperturbed flow:
// Fermi-frame field sampling, the index form, the periodic inhomogeneous
// Jacobi boundary-value problem for the variational field W, the identity
// suite, and the per-orbit inequality margins.
#pragma once

#include <functional>
#include <vector>

#include "gth/field.hpp"
#include "gth/words.hpp"

namespace gth {

// frame components (tangential, normal) of a periodic field along a closed
// geodesic, sampled on the uniform grid t_i = i T / n
struct PeriodicField {
  double T = 0.0;
  std::vector<double> ut, un;
};

// E'_0 and its covariant derivative along the geodesic, frame components
struct OrbitFieldSamples {
  double T = 0.0;
  std::vector<double> et, en;    // <E', gdot>, <E', n>
  std::vector<double> det, den;  // <nabla_gdot E', gdot>, <nabla_gdot E', n>
};
OrbitFieldSamples sample_field_along(const BolzaSurface& surface, const PotentialField& field,
                                     const ClosedGeodesic& geo, int n);

// I(U,V) = int <U',V'> - <R(gdot,U)gdot,V> dt on the uniform grid; derivatives
// are spectral, the quadrature is the (spectrally accurate) periodic trapezoid
double index_form(const PeriodicField& U, const PeriodicField& V);

struct WField {
  double T = 0.0;
  int n = 0;
  std::vector<double> w, wdot;  // normal component (tangential component gauged to 0)
  double IWW = 0.0;             // I(W, W) by Parseval
  double ode_residual = 0.0;    // max |w'' - w - f| at half-shifted nodes, fresh forcing
  double periodicity_gap = 0.0; // |w(T)-w(0)| + |w'(T)-w'(0)| (exactly 0 by construction)
};

// periodic solution of  W'' + R(gdot, W)gdot = E' - <E',gdot>gdot  on the
// geodesic; in the Fermi frame the tangential part is gauge-fixed to zero and
// the normal part solves w'' - w = <E', n> by Fourier inversion,
// w_k = -f_k / ((2 pi k / T)^2 + 1)
WField solve_W(const BolzaSurface& surface, const PotentialField& field,
               const ClosedGeodesic& geo, double tol = 1e-8, int n0 = 256,
               int n_max = 16384);

struct IndexReport {
  double I_EE = 0, I_E_tan = 0, I_tan_tan = 0, I_VV = 0;
  double I_WE = 0, I_W_tan = 0, I_WW = 0;
  double res24 = 0, res26 = 0, res27 = 0, res28 = 0;  // index form vs direct quadrature
  double eq30_direct = 0, eq30_variant_a = 0, eq30_variant_b = 0;
  int adjudicated_variant = 0;  // 1 or 2 for (a)/(b): which matches eq30_direct
  double A_orbit = 0, B_orbit = 0;  // per-orbit time integrals of the bound integrands
};

IndexReport identity_suite(const BolzaSurface& surface, const PotentialField& field,
                           const ClosedGeodesic& geo, const WField& W);

// margins T''(0) - (2 x A - x^2 B) for the given x values
std::vector<double> inequality_margins(double Tsecond, double A_orbit, double B_orbit,
                                       const std::vector<double>& xs);

// adaptive composite Gauss-Legendre quadrature of a periodic integrand over
// [0, T]: 64-node panels, panel count doubled until values agree to tol
double quad_periodic(const std::function<double(double)>& f, double T, double tol = 1e-9);

}  // namespace gth
