// Shared controlled-RKF78 stepping loop (internal).
#pragma once

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <limits>

#include "gth/flow.hpp"

namespace gth::detail {

// march y from t=0 to t=t_end (t_end > 0); `post` runs after every accepted
// step and may transform the state; checkpoints are landed on exactly.
template <size_t N, class Sys, class Post>
IntegratorStats march(Sys&& sys, std::array<double, N>& y, double t_end,
                      const IntegratorConfig& cfg,
                      const std::vector<double>* checkpoints,
                      const std::function<void(double, const std::array<double, N>&)>* on_checkpoint,
                      Post&& post) {
  namespace ode = boost::numeric::odeint;
  using state_t = std::array<double, N>;
  auto ctrl = ode::make_controlled(cfg.atol, cfg.rtol,
                                   ode::runge_kutta_fehlberg78<state_t>());
  IntegratorStats stats;
  double t = 0.0;
  double dt = std::min(cfg.dt_init, cfg.dt_max);
  size_t next_cp = 0;
  const double eps = 1e-14 * std::max(1.0, t_end);
  while (t < t_end - eps) {
    double limit = t_end;
    if (checkpoints && next_cp < checkpoints->size())
      limit = std::min(limit, (*checkpoints)[next_cp]);
    dt = std::min({dt, cfg.dt_max, limit - t});
    if (dt <= 0) {  // sitting on a checkpoint
      if (on_checkpoint) (*on_checkpoint)(t, y);
      ++next_cp;
      dt = cfg.dt_init;
      continue;
    }
    auto res = ctrl.try_step(sys, y, t, dt);
    if (res == ode::controlled_step_result::fail) {
      ++stats.rejected;
      continue;
    }
    ++stats.steps;
    post(t, y);
    if (checkpoints && next_cp < checkpoints->size() &&
        t >= (*checkpoints)[next_cp] - eps) {
      if (on_checkpoint) (*on_checkpoint)(t, y);
      ++next_cp;
    }
  }
  return stats;
}

}  // namespace gth::detail
