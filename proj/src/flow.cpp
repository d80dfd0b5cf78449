#include "gth/flow.hpp"

#include <cmath>

#include "gth/detail/rk.hpp"
#include "gth/words.hpp"

namespace gth {

void thermostat_rhs(const PotentialField& field, double lambda, const double y[4],
                    double dydt[4]) {
  SurfacePoint p{y[0], y[1]};
  Vec2 v{y[2], y[3]};
  Vec2 acc = christoffel(p, v, v);
  dydt[0] = v.u1;
  dydt[1] = v.u2;
  dydt[2] = -acc.u1;
  dydt[3] = -acc.u2;
  if (lambda != 0.0) {
    Vec2 e = field.grad(p);
    double vv = v.u1 * v.u1 + v.u2 * v.u2;  // conformal factors cancel in <E,v>/|v|^2
    double ed = (e.u1 * v.u1 + e.u2 * v.u2) / vv;
    dydt[2] += lambda * (e.u1 - ed * v.u1);
    dydt[3] += lambda * (e.u2 - ed * v.u2);
  }
}

namespace {

using State4 = std::array<double, 4>;

PhasePoint unpack(const State4& y) { return {{y[0], y[1]}, {y[2], y[3]}}; }
State4 pack(const PhasePoint& th) { return {th.p.x, th.p.y, th.v.u1, th.v.u2}; }

double energy_drift(const State4& y) {
  PhasePoint th = unpack(y);
  return std::abs(metric_norm(th.p, th.v) - 1.0);
}

}  // namespace

Trajectory integrate_flow(const BolzaSurface& surface, const PotentialField& field,
                          double lambda, const PhasePoint& theta0, double t_end,
                          const IntegratorConfig& cfg) {
  namespace ode = boost::numeric::odeint;
  require_in_disk(theta0.p);

  const double sign = (t_end < 0) ? -1.0 : 1.0;
  const double span = std::abs(t_end);
  auto sys = [&](const State4& y, State4& dydt, double) {
    double d[4];
    thermostat_rhs(field, lambda, y.data(), d);
    for (int i = 0; i < 4; ++i) dydt[i] = sign * d[i];
  };

  Trajectory out;
  out.lambda = lambda;
  State4 y = pack(theta0);
  {
    PhasePoint th = unpack(y);
    auto w = surface.reduce(th);
    for (uint8_t l : w) {
      out.crossing_times.push_back(0.0);
      out.crossing_letters.push_back(l);
    }
    y = pack(th);
  }
  int segment = static_cast<int>(out.crossing_letters.size());
  out.samples.push_back({0.0, unpack(y), segment});

  auto ctrl = ode::make_controlled(cfg.atol, cfg.rtol,
                                   ode::runge_kutta_fehlberg78<State4>());
  ode::runge_kutta_fehlberg78<State4> base;

  double s = 0.0;
  double dt = std::min(cfg.dt_init, cfg.dt_max);
  // a crossing must run deeper than the reducer's boundary tolerance, so the
  // landing state is always strictly reducible
  const double event_depth = 2e-12;
  while (s < span - 1e-14 * std::max(1.0, span)) {
    dt = std::min({dt, cfg.dt_max, span - s});
    State4 y_prev = y;
    double s_prev = s;
    auto res = ctrl.try_step(sys, y, s, dt);
    if (res == ode::controlled_step_result::fail) {
      ++out.stats.rejected;
      continue;
    }
    ++out.stats.steps;
    PhasePoint th = unpack(y);
    if (surface.domain_margin(th.p) < -event_depth) {
      // bisect the crossing time within the last step, landing just outside
      double lo = 0.0, hi = s - s_prev;
      State4 y_hi = y;
      while (hi - lo > cfg.crossing_tol) {
        double mid = 0.5 * (lo + hi);
        State4 probe = y_prev;
        base.do_step(sys, probe, s_prev, mid);
        if (surface.domain_margin(unpack(probe).p) < -event_depth)
          hi = mid, y_hi = probe;
        else
          lo = mid;
      }
      s = s_prev + hi;
      PhasePoint crossed = unpack(y_hi);
      auto word = surface.reduce(crossed);
      if (word.empty())
        throw std::runtime_error("integrate_flow: crossing detected but reduction idle");
      for (uint8_t l : word) {
        out.crossing_times.push_back(sign * s);
        out.crossing_letters.push_back(l);
        ++segment;
      }
      y = pack(crossed);
    }
    out.stats.max_energy_drift = std::max(out.stats.max_energy_drift, energy_drift(y));
    out.samples.push_back({sign * s, unpack(y), segment});
  }
  return out;
}

CoverResult integrate_cover(const BolzaSurface& surface, const PotentialField& field,
                            double lambda, const PhasePoint& theta0, double t_end,
                            const IntegratorConfig& cfg,
                            const std::vector<double>* checkpoints,
                            const std::function<void(double, const PhasePoint&)>* on_checkpoint,
                            bool recenter) {
  require_in_disk(theta0.p);
  const double sign = (t_end < 0) ? -1.0 : 1.0;
  const double span = std::abs(t_end);
  auto sys = [&](const State4& y, State4& dydt, double) {
    double d[4];
    thermostat_rhs(field, lambda, y.data(), d);
    for (int i = 0; i < 4; ++i) dydt[i] = sign * d[i];
  };

  CoverResult out;
  out.deck = Mobius::identity();
  State4 y = pack(theta0);

  std::function<void(double, const std::array<double, 4>&)> cp_fn;
  if (on_checkpoint)
    cp_fn = [&](double t, const State4& yy) { (*on_checkpoint)(sign * t, unpack(yy)); };

  auto post = [&](double, State4& yy) {
    double drift = energy_drift(yy);
    if (drift > out.stats.max_energy_drift) out.stats.max_energy_drift = drift;
    if (recenter && std::abs(unpack(yy).p.z()) > 0.9) {
      PhasePoint th = unpack(yy);
      auto word = surface.reduce(th);
      for (uint8_t l : word) {
        out.deck = surface.generator(l).compose(out.deck).normalized();
        out.deck_word.push_back(l);
      }
      yy = pack(th);
    }
  };
  auto stats = detail::march<4>(sys, y, span, cfg, checkpoints,
                                on_checkpoint ? &cp_fn : nullptr, post);
  stats.max_energy_drift = std::max(stats.max_energy_drift, out.stats.max_energy_drift);
  out.stats = stats;
  out.state = unpack(y);
  return out;
}

}  // namespace gth
