#include "gth/jacobi.hpp"

#include <cmath>

#include "gth/detail/rk.hpp"

namespace gth {

namespace {

// complex multiplication as a real 2x2 block
inline void put_block(Eigen::Matrix4d& M, int r, int c, cplx z) {
  M(r, c) = z.real();
  M(r, c + 1) = -z.imag();
  M(r + 1, c) = z.imag();
  M(r + 1, c + 1) = z.real();
}

}  // namespace

Eigen::Matrix4d thermostat_jacobian(const PotentialField& field, double lambda,
                                    const PhasePoint& theta) {
  double x = theta.p.x, y = theta.p.y, v1 = theta.v.u1, v2 = theta.v.u2;
  double A = 1.0 - (x * x + y * y);
  double fx = 2 * x / A, fy = 2 * y / A;
  double fxx = 2.0 / A + fx * fx, fyy = 2.0 / A + fy * fy, fxy = fx * fy;

  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J(0, 2) = 1;
  J(1, 3) = 1;
  // -d Gamma(v,v) / d(x,y,v)
  double s11 = v1 * v1 - v2 * v2, s12 = 2 * v1 * v2;
  J(2, 0) -= fxx * s11 + fxy * s12;
  J(2, 1) -= fxy * s11 + fyy * s12;
  J(3, 0) -= fxy * (-s11) + fxx * s12;
  J(3, 1) -= fyy * (-s11) + fxy * s12;
  J(2, 2) -= 2 * fx * v1 + 2 * fy * v2;
  J(2, 3) -= -2 * fx * v2 + 2 * fy * v1;
  J(3, 2) -= -2 * fy * v1 + 2 * fx * v2;
  J(3, 3) -= 2 * fy * v2 + 2 * fx * v1;

  if (lambda != 0.0) {
    Vec2 e;
    double je[2][2];
    field.grad_jacobian(theta.p, e, je);
    double vv = v1 * v1 + v2 * v2;
    double ev = e.u1 * v1 + e.u2 * v2;
    double vvec[2] = {v1, v2}, evec[2] = {e.u1, e.u2};
    // dY/dp = lambda (I - v v^T/(v.v)) dE/dp
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double pij = je[i][j] - vvec[i] * (vvec[0] * je[0][j] + vvec[1] * je[1][j]) / vv;
        J(2 + i, j) += lambda * pij;
      }
    // dY/dv
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double t = -(evec[j] * vvec[i] + ev * (i == j ? 1.0 : 0.0)) / vv +
                   2.0 * ev * vvec[i] * vvec[j] / (vv * vv);
        J(2 + i, 2 + j) += lambda * t;
      }
  }
  return J;
}

Eigen::Matrix4d deck_differential(const Mobius& g, const PhasePoint& theta) {
  cplx z = theta.p.z();
  cplx d1 = g.deriv_z(z);
  cplx d2 = g.second_deriv_z(z) * theta.v.z();
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  put_block(M, 0, 0, d1);
  put_block(M, 2, 0, d2);
  put_block(M, 2, 2, d1);
  return M;
}

void variation_to_jacobi(const PhasePoint& theta, const Vec2& dp, const Vec2& dv,
                         Vec2& J, Vec2& DJ) {
  J = dp;
  DJ = dv + christoffel(theta.p, dp, theta.v);
}

void jacobi_to_variation(const PhasePoint& theta, const Vec2& J, const Vec2& DJ,
                         Vec2& dp, Vec2& dv) {
  dp = J;
  dv = DJ - christoffel(theta.p, J, theta.v);
}

JacobiSolution integrate_jacobi(const BolzaSurface& surface, const PotentialField& field,
                                double lambda, const PhasePoint& theta0, const Vec2& J0,
                                const Vec2& DJ0, double t_end, const IntegratorConfig& cfg,
                                bool recenter) {
  using State = std::array<double, 10>;
  require_in_disk(theta0.p);
  const double sign = (t_end < 0) ? -1.0 : 1.0;
  const double span = std::abs(t_end);

  auto rhs = [&](const State& s, State& ds, double) {
    SurfacePoint p{s[0], s[1]};
    Vec2 v{s[2], s[3]}, e1{s[4], s[5]};
    thermostat_rhs(field, lambda, s.data(), ds.data());
    Vec2 de1 = -1.0 * christoffel(p, v, e1);
    ds[4] = de1.u1;
    ds[5] = de1.u2;
    Vec2 e2{-e1.u2, e1.u1};
    Vec2 Jc = s[6] * e1 + s[7] * e2;
    Vec2 DJc = s[8] * e1 + s[9] * e2;
    double gg = metric_inner(p, v, v);
    // R(gd, J)gd = K(<gd,gd> J - <J,gd> gd), K = -1
    double Jg = metric_inner(p, Jc, v);
    Vec2 Rterm = -1.0 * (gg * Jc - Jg * v);
    Vec2 E = field.eval_E(lambda, p);
    Vec2 nJE = lambda * field.covariant_grad(p, Jc);
    Vec2 bracket = (metric_inner(p, nJE, v) * v + metric_inner(p, E, DJc) * v -
                    (2.0 * metric_inner(p, DJc, v) * metric_inner(p, E, v) / gg) * v +
                    metric_inner(p, E, v) * DJc) *
                   (1.0 / gg);
    Vec2 DDJ = -1.0 * Rterm + nJE - bracket;
    double ee = metric_inner(p, e1, e1);
    ds[6] = s[8];
    ds[7] = s[9];
    ds[8] = metric_inner(p, DDJ, e1) / ee;
    ds[9] = metric_inner(p, DDJ, e2) / ee;
    for (int i = 0; i < 10; ++i) ds[i] *= sign;
  };

  // initial frame: e1 = unit vector along v; J, DJ in that frame
  PhasePoint th0 = theta0;
  double nv = metric_norm(th0.p, th0.v);
  Vec2 e1{th0.v.u1 / nv, th0.v.u2 / nv};
  Vec2 e2{-e1.u2, e1.u1};
  double ee = metric_inner(th0.p, e1, e1);
  State s{th0.p.x, th0.p.y, th0.v.u1, th0.v.u2, e1.u1, e1.u2,
          metric_inner(th0.p, J0, e1) / ee, metric_inner(th0.p, J0, e2) / ee,
          metric_inner(th0.p, DJ0, e1) / ee, metric_inner(th0.p, DJ0, e2) / ee};

  JacobiSolution out;
  out.ts.push_back(0.0);
  out.frame.push_back({s[6], s[7], s[8], s[9]});

  auto post = [&](double t, State& y) {
    PhasePoint th{{y[0], y[1]}, {y[2], y[3]}};
    double drift = std::abs(metric_norm(th.p, th.v) - 1.0);
    if (drift > out.stats.max_energy_drift) out.stats.max_energy_drift = drift;
    if (recenter && std::abs(th.p.z()) > 0.9) {
      PhasePoint state = th;
      auto word = surface.reduce(state);
      // transport the frame like a tangent vector; jacobi components are
      // invariant under the (conformal) deck maps
      cplx z0{y[0], y[1]};
      cplx fz{y[4], y[5]};
      for (uint8_t l : word) {
        const Mobius& g = surface.generator(l);
        fz = g.deriv_z(z0) * fz;
        z0 = g.apply_z(z0);
      }
      y = {state.p.x, state.p.y, state.v.u1, state.v.u2, fz.real(), fz.imag(),
           y[6], y[7], y[8], y[9]};
    }
    out.ts.push_back(sign * t);
    out.frame.push_back({y[6], y[7], y[8], y[9]});
  };

  auto stats = detail::march<10>(rhs, s, span, cfg, nullptr, nullptr, post);
  stats.max_energy_drift = std::max(stats.max_energy_drift, out.stats.max_energy_drift);
  out.stats = stats;
  out.end_state = {{s[0], s[1]}, {s[2], s[3]}};
  Vec2 fe1{s[4], s[5]};
  Vec2 fe2{-fe1.u2, fe1.u1};
  out.J_end = s[6] * fe1 + s[7] * fe2;
  out.DJ_end = s[8] * fe1 + s[9] * fe2;
  return out;
}

VariationalResult variational_flow(const BolzaSurface& surface, const PotentialField& field,
                                   double lambda, const PhasePoint& theta0, double t_end,
                                   const IntegratorConfig& cfg, bool record, bool recenter) {
  using State = std::array<double, 20>;
  require_in_disk(theta0.p);
  const double sign = (t_end < 0) ? -1.0 : 1.0;
  const double span = std::abs(t_end);

  auto rhs = [&](const State& s, State& ds, double) {
    thermostat_rhs(field, lambda, s.data(), ds.data());
    PhasePoint th{{s[0], s[1]}, {s[2], s[3]}};
    Eigen::Matrix4d A = thermostat_jacobian(field, lambda, th);
    // columns of M stored at offsets 4 + 4*c
    for (int c = 0; c < 4; ++c) {
      Eigen::Vector4d col(s[4 + 4 * c], s[5 + 4 * c], s[6 + 4 * c], s[7 + 4 * c]);
      Eigen::Vector4d dcol = A * col;
      for (int r = 0; r < 4; ++r) ds[4 + 4 * c + r] = dcol(r);
    }
    for (int i = 0; i < 20; ++i) ds[i] *= sign;
  };

  State s{};
  s[0] = theta0.p.x;
  s[1] = theta0.p.y;
  s[2] = theta0.v.u1;
  s[3] = theta0.v.u2;
  for (int c = 0; c < 4; ++c) s[4 + 5 * c] = 1.0;  // identity matrix

  VariationalResult out;
  out.deck = Mobius::identity();

  auto get_M = [&](const State& y) {
    Eigen::Matrix4d M;
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < 4; ++r) M(r, c) = y[4 + 4 * c + r];
    return M;
  };
  auto set_M = [&](State& y, const Eigen::Matrix4d& M) {
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < 4; ++r) y[4 + 4 * c + r] = M(r, c);
  };

  if (record) {
    out.ts.push_back(0.0);
    out.Ms.push_back(Eigen::Matrix4d::Identity());
  }

  auto post = [&](double t, State& y) {
    PhasePoint th{{y[0], y[1]}, {y[2], y[3]}};
    double drift = std::abs(metric_norm(th.p, th.v) - 1.0);
    if (drift > out.stats.max_energy_drift) out.stats.max_energy_drift = drift;
    if (recenter && std::abs(th.p.z()) > 0.9) {
      PhasePoint state = th;
      auto word = surface.reduce(state);
      Eigen::Matrix4d M = get_M(y);
      PhasePoint pre = th;
      for (uint8_t l : word) {
        const Mobius& g = surface.generator(l);
        M = deck_differential(g, pre) * M;
        pre = g.apply(pre);
        out.deck = g.compose(out.deck).normalized();
        out.deck_word.push_back(l);
      }
      y[0] = state.p.x;
      y[1] = state.p.y;
      y[2] = state.v.u1;
      y[3] = state.v.u2;
      set_M(y, M);
    }
    if (record) {
      out.ts.push_back(sign * t);
      out.Ms.push_back(get_M(y));
    }
  };

  auto stats = detail::march<20>(rhs, s, span, cfg, nullptr, nullptr, post);
  stats.max_energy_drift = std::max(stats.max_energy_drift, out.stats.max_energy_drift);
  out.stats = stats;
  out.state = {{s[0], s[1]}, {s[2], s[3]}};
  out.M = get_M(s);
  return out;
}

}  // namespace gth
