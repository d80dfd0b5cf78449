#include "gth/orbit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "gth/quadrature.hpp"
#include "gth/thermostat.hpp"

namespace gth {

namespace {

// section chart about the anchor: the Sasaki-orthogonal complement of the flow
// direction inside the unit-energy level, two coordinates (s1, s2)
struct SectionChart {
  PhasePoint anchor;
  Vec2 n;        // unit normal at the anchor (rotated velocity)
  double y_n;    // normal component of the vertical part of F at the anchor

  PhasePoint embed(double s1, double s2) const {
    Vec2 dp{s1 * n.u1 - s2 * y_n * anchor.v.u1, s1 * n.u2 - s2 * y_n * anchor.v.u2};
    Vec2 dv_cov{s2 * n.u1, s2 * n.u2};
    Vec2 dv = dv_cov - christoffel(anchor.p, dp, anchor.v);
    PhasePoint th{{anchor.p.x + dp.u1, anchor.p.y + dp.u2},
                  {anchor.v.u1 + dv.u1, anchor.v.u2 + dv.u2}};
    return normalized_state(th);
  }

  // d embed / d(s1, s2), 4x2, by center differences (chart only; the flow
  // jacobian itself is the exact variational matrix)
  Eigen::Matrix<double, 4, 2> embed_jacobian(double s1, double s2) const {
    Eigen::Matrix<double, 4, 2> J;
    const double h = 1e-7;
    for (int k = 0; k < 2; ++k) {
      double a1 = s1 + (k == 0 ? h : 0), a2 = s2 + (k == 1 ? h : 0);
      double b1 = s1 - (k == 0 ? h : 0), b2 = s2 - (k == 1 ? h : 0);
      PhasePoint tp = embed(a1, a2), tm = embed(b1, b2);
      J(0, k) = (tp.p.x - tm.p.x) / (2 * h);
      J(1, k) = (tp.p.y - tm.p.y) / (2 * h);
      J(2, k) = (tp.v.u1 - tm.v.u1) / (2 * h);
      J(3, k) = (tp.v.u2 - tm.v.u2) / (2 * h);
    }
    return J;
  }
};

SectionChart make_chart(const PotentialField& field, double lambda, const PhasePoint& anchor) {
  SectionChart c;
  c.anchor = normalized_state(anchor);
  c.n = {-c.anchor.v.u2, c.anchor.v.u1};
  Vec2 vert = y_twist(field, lambda, c.anchor, c.anchor.v);
  c.y_n = metric_inner(c.anchor.p, vert, c.n);
  return c;
}

struct ShotResult {
  Eigen::Vector4d r;
  Eigen::Matrix<double, 4, 3> J;
  double residual;
};

ShotResult shoot(const BolzaSurface& surface, const PotentialField& field, double lambda,
                 const SectionChart& chart, const Mobius& delta, double s1, double s2,
                 double T, const IntegratorConfig& icfg) {
  PhasePoint th = chart.embed(s1, s2);
  VariationalResult vr = variational_flow(surface, field, lambda, th, T, icfg);
  Mobius target_map = vr.deck.compose(delta);
  PhasePoint target = target_map.apply(th);

  ShotResult out;
  out.r << vr.state.p.x - target.p.x, vr.state.p.y - target.p.y,
      vr.state.v.u1 - target.v.u1, vr.state.v.u2 - target.v.u2;
  out.residual = out.r.norm();

  Eigen::Matrix<double, 4, 2> E = chart.embed_jacobian(s1, s2);
  Eigen::Matrix4d Dtarget = deck_differential(target_map, th);
  out.J.block<4, 2>(0, 0) = vr.M * E - Dtarget * E;
  double f[4];
  double y[4] = {vr.state.p.x, vr.state.p.y, vr.state.v.u1, vr.state.v.u2};
  thermostat_rhs(field, lambda, y, f);
  out.J(0, 2) = f[0];
  out.J(1, 2) = f[1];
  out.J(2, 2) = f[2];
  out.J(3, 2) = f[3];
  return out;
}

std::optional<PeriodicOrbit> try_newton(const BolzaSurface& surface,
                                        const PotentialField& field, double lambda,
                                        const PhasePoint& anchor, const Mobius& delta,
                                        double T_guess, const ContinuationConfig& cfg) {
  SectionChart chart = make_chart(field, lambda, anchor);
  double s1 = 0, s2 = 0, T = T_guess;
  double best = 1e300;
  for (int it = 0; it < cfg.max_newton; ++it) {
    ShotResult shot = shoot(surface, field, lambda, chart, delta, s1, s2, T, cfg.integrator);
    if (shot.residual < cfg.newton_tol) {
      PeriodicOrbit orb;
      orb.lambda = lambda;
      orb.anchor = chart.embed(s1, s2);
      orb.deck = delta;
      orb.period = T;
      orb.residual = shot.residual;
      orb.newton_iterations = it;
      return orb;
    }
    if (shot.residual > 1e3 || (it >= 6 && shot.residual > best)) return std::nullopt;
    best = std::min(best, shot.residual);
    Eigen::Vector3d du = shot.J.colPivHouseholderQr().solve(-shot.r);
    if (!du.allFinite()) return std::nullopt;
    s1 += du(0);
    s2 += du(1);
    T += du(2);
    if (!(T > 0.1 * T_guess && T < 10.0 * T_guess)) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

PeriodicOrbit continue_orbit(const BolzaSurface& surface, const PotentialField& field,
                             const ClosedGeodesic& geo, double lambda,
                             const ContinuationConfig& cfg, const PeriodicOrbit* seed) {
  PhasePoint anchor = seed ? seed->anchor : geo.base;
  Mobius delta = seed ? seed->deck : geo.deck;
  double T0 = seed ? seed->period : geo.length;
  double lam0 = seed ? seed->lambda : 0.0;

  // direct attempt, then homotopy bisection in lambda
  std::vector<double> path{lambda};
  PhasePoint cur_anchor = anchor;
  double cur_T = T0;
  double cur_lam = lam0;
  int depth = 0;
  while (true) {
    double lam = path.back();
    auto orb = try_newton(surface, field, lam, cur_anchor, delta, cur_T, cfg);
    if (orb) {
      path.pop_back();
      cur_anchor = orb->anchor;
      cur_T = orb->period;
      cur_lam = lam;
      if (path.empty()) return *orb;
    } else {
      if (++depth > cfg.max_homotopy_depth)
        throw std::runtime_error("continue_orbit: Newton failed after homotopy refinement");
      path.push_back(0.5 * (cur_lam + lam));
    }
  }
}

std::vector<PhasePoint> orbit_states(const BolzaSurface& surface, const PotentialField& field,
                                     const PeriodicOrbit& orbit, const std::vector<double>& ts,
                                     const IntegratorConfig& cfg) {
  std::vector<PhasePoint> out;
  out.reserve(ts.size());
  std::function<void(double, const PhasePoint&)> cb = [&](double, const PhasePoint& th) {
    out.push_back(th);
  };
  integrate_cover(surface, field, orbit.lambda, orbit.anchor, orbit.period, cfg, &ts, &cb);
  return out;
}

OddEvenFit fit_odd_even(const std::vector<double>& h, const std::vector<double>& plus,
                        const std::vector<double>& minus, double at0) {
  size_t n = h.size();
  Eigen::MatrixXd Ao(n, 2), Ae(n, 2);
  Eigen::VectorXd bo(n), be(n);
  for (size_t i = 0; i < n; ++i) {
    Ao(i, 0) = h[i];
    Ao(i, 1) = h[i] * h[i] * h[i];
    bo(i) = 0.5 * (plus[i] - minus[i]);
    Ae(i, 0) = h[i] * h[i];
    Ae(i, 1) = h[i] * h[i] * h[i] * h[i];
    be(i) = 0.5 * (plus[i] + minus[i]) - at0;
  }
  OddEvenFit fit;
  Eigen::Vector2d co = Ao.colPivHouseholderQr().solve(bo);
  Eigen::Vector2d ce = Ae.colPivHouseholderQr().solve(be);
  fit.c1 = co(0);
  fit.c2 = ce(0);
  auto stderr_of = [](const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                      const Eigen::Vector2d& c) {
    Eigen::VectorXd r = b - A * c;
    double dof = std::max<double>(1.0, static_cast<double>(A.rows()) - 2);
    double s2 = r.squaredNorm() / dof;
    Eigen::Matrix2d cov = s2 * (A.transpose() * A).inverse();
    return std::sqrt(std::max(0.0, cov(0, 0)));
  };
  fit.c1_err = stderr_of(Ao, bo, co);
  fit.c2_err = stderr_of(Ae, be, ce);
  return fit;
}

PeriodCurve period_curve(const BolzaSurface& surface, const PotentialField& field,
                         const ClosedGeodesic& geo, const std::vector<double>& lambda_steps,
                         const ContinuationConfig& cfg) {
  PeriodCurve out;
  PeriodicOrbit at0 = continue_orbit(surface, field, geo, 0.0, cfg);
  out.T0 = at0.period;
  out.lambdas.push_back(0.0);
  out.periods.push_back(at0.period);

  std::vector<double> plus, minus;
  for (int sign : {+1, -1}) {
    PeriodicOrbit prev = at0;
    for (double h : lambda_steps) {
      PeriodicOrbit orb = continue_orbit(surface, field, geo, sign * h, cfg, &prev);
      out.lambdas.push_back(sign * h);
      out.periods.push_back(orb.period);
      (sign > 0 ? plus : minus).push_back(orb.period);
      prev = orb;
    }
  }
  OddEvenFit fit = fit_odd_even(lambda_steps, plus, minus, out.T0);
  out.Tprime = fit.c1;
  out.Tprime_err = fit.c1_err;
  out.Tsecond = 2.0 * fit.c2;
  out.Tsecond_err = 2.0 * fit.c2_err;
  return out;
}

EnergyCurve energy_second_variation(const BolzaSurface& surface, const PotentialField& field,
                                    const ClosedGeodesic& geo,
                                    const std::vector<double>& lambda_steps,
                                    const ContinuationConfig& cfg, int quad_nodes) {
  EnergyCurve out;
  const double T = geo.length;

  auto loop_energy = [&](const PeriodicOrbit& orb) {
    // E of the loop reparametrized to period T: (T_l/T) int_0^{T_l} |v|_g^2 du,
    // evaluated by composite Gauss-Legendre quadrature on the measured speeds
    GaussLegendre gl(quad_nodes);  // nodes increasing, so ts comes out sorted
    std::vector<double> ts;
    for (int seg = 0; seg < 2; ++seg)
      for (int i = 0; i < quad_nodes; ++i)
        ts.push_back(0.5 * orb.period * (seg + 0.5 + 0.5 * gl.node(i)));
    auto states = orbit_states(surface, field, orb, ts, cfg.integrator);
    double acc = 0.0;
    size_t k = 0;
    for (int seg = 0; seg < 2; ++seg)
      for (int i = 0; i < quad_nodes; ++i, ++k) {
        double sp = metric_inner(states[k].p, states[k].v, states[k].v);
        acc += 0.25 * orb.period * gl.weight(i) * sp;
      }
    return (orb.period / T) * acc;
  };

  PeriodicOrbit at0 = continue_orbit(surface, field, geo, 0.0, cfg);
  double E0 = loop_energy(at0);
  out.lambdas.push_back(0.0);
  out.energies.push_back(E0);
  out.max_rel_dev = std::abs(E0 - at0.period * at0.period / T) / std::abs(E0);

  std::vector<double> plus, minus;
  for (int sign : {+1, -1}) {
    PeriodicOrbit prev = at0;
    for (double h : lambda_steps) {
      PeriodicOrbit orb = continue_orbit(surface, field, geo, sign * h, cfg, &prev);
      double E = loop_energy(orb);
      out.lambdas.push_back(sign * h);
      out.energies.push_back(E);
      out.max_rel_dev = std::max(out.max_rel_dev,
                                 std::abs(E - orb.period * orb.period / T) / std::abs(E));
      (sign > 0 ? plus : minus).push_back(E);
      prev = orb;
    }
  }
  OddEvenFit fit = fit_odd_even(lambda_steps, plus, minus, E0);
  out.second_derivative = 2.0 * fit.c2;
  return out;
}

}  // namespace gth
