#include "gth/field.hpp"

#include <cmath>
#include <stdexcept>

#include "gth/rng.hpp"
#include "gth/words.hpp"

namespace gth {

namespace {

// D(m) = arccosh(1+m)^2 and derivatives; series near m = 0
inline void dist2_terms(double m, double& D, double& D1, double& D2) {
  if (m < 1e-6) {
    D = 2 * m - m * m / 3 + 4 * m * m * m / 45;
    D1 = 2 - 2 * m / 3 + 4 * m * m / 15;
    D2 = -2.0 / 3 + 8 * m / 15;
    return;
  }
  double d = std::acosh(1 + m);
  double r = std::sqrt(m * (m + 2));
  D = d * d;
  D1 = 2 * d / r;
  D2 = 2.0 / (m * m + 2 * m) - 2 * d * (m + 1) / (r * r * r);
}

// bump profile through y = D/w^2: F = exp(-1/(1-y)); returns F, dF/dm, d2F/dm2
inline void bump_terms(double m, double mmax, double inv_w2, double& F, double& Fm,
                       double& Fmm) {
  if (m >= mmax) {
    F = Fm = Fmm = 0.0;
    return;
  }
  double D, D1, D2;
  dist2_terms(m, D, D1, D2);
  double y = D * inv_w2;
  if (y >= 1.0) {
    F = Fm = Fmm = 0.0;
    return;
  }
  double g = 1.0 / (1.0 - y);
  F = std::exp(-g);
  double Fy = -F * g * g;
  double Fyy = F * g * g * g * g - 2.0 * F * g * g * g;
  Fm = Fy * inv_w2 * D1;
  Fmm = Fyy * inv_w2 * inv_w2 * D1 * D1 + Fy * inv_w2 * D2;
}

}  // namespace

PotentialField::PotentialField(const BolzaSurface& surface, FieldSpec spec)
    : spec_(std::move(spec)) {
  if (spec_.truncation < 0) throw std::invalid_argument("truncation >= 0 required");
  // word ball of the group, deduplicated by matrix (relation-induced repeats)
  std::vector<Mobius> ball{Mobius::identity()};
  {
    std::vector<Word> frontier{{}};
    std::vector<Mobius> fmats{Mobius::identity()};
    for (int depth = 0; depth < spec_.truncation; ++depth) {
      std::vector<Word> nw;
      std::vector<Mobius> nm;
      for (size_t i = 0; i < frontier.size(); ++i) {
        for (uint8_t l = 0; l < 8; ++l) {
          if (!frontier[i].empty() && l == letter_inverse(frontier[i].back())) continue;
          Word w = frontier[i];
          w.push_back(l);
          Mobius m = fmats[i].compose(surface.generator(l)).normalized();
          nw.push_back(std::move(w));
          nm.push_back(m);
        }
      }
      ball.insert(ball.end(), nm.begin(), nm.end());
      frontier = std::move(nw);
      fmats = std::move(nm);
    }
  }

  for (const auto& bump : spec_.bumps) {
    if (bump.width <= 0) throw std::invalid_argument("bump width must be positive");
    require_in_disk(bump.center);
    double mmax = std::cosh(bump.width) - 1.0;
    double tanh_half = std::tanh(bump.width / 2.0);
    for (const auto& g : ball) {
      cplx q = g.apply_z(bump.center.z());
      Translate t;
      t.qx = q.real();
      t.qy = q.imag();
      t.B = 1.0 - std::norm(q);
      t.amp = bump.amplitude;
      t.mmax = mmax;
      t.inv_w2 = 1.0 / (bump.width * bump.width);
      // hyperbolic ball of radius width about q is the euclidean disk with
      //   center q (1 - r^2)/(1 - r^2 |q|^2), radius r (1 - |q|^2)/(1 - r^2 |q|^2),
      // r = tanh(width/2)
      double r = tanh_half, r2 = r * r, q2 = std::norm(q);
      double den = 1.0 - r2 * q2;
      double scale = (1.0 - r2) / den;
      t.bx = t.qx * scale;
      t.by = t.qy * scale;
      double br = r * (1.0 - q2) / den;
      t.br2 = br * br;
      translates_.push_back(t);
    }
  }

  // grid index
  grid_n_ = 128;
  cell_ = 2.0 / grid_n_;
  grid_.assign(static_cast<size_t>(grid_n_) * grid_n_, {});
  for (size_t ti = 0; ti < translates_.size(); ++ti) {
    const auto& t = translates_[ti];
    double br = std::sqrt(t.br2);
    int i0 = std::max(0, static_cast<int>((t.bx - br + 1.0) / cell_));
    int i1 = std::min(grid_n_ - 1, static_cast<int>((t.bx + br + 1.0) / cell_));
    int j0 = std::max(0, static_cast<int>((t.by - br + 1.0) / cell_));
    int j1 = std::min(grid_n_ - 1, static_cast<int>((t.by + br + 1.0) / cell_));
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j) {
        // cell rectangle vs bounding circle overlap
        double cx = -1.0 + (i + 0.5) * cell_, cy = -1.0 + (j + 0.5) * cell_;
        double dx = std::max(std::abs(cx - t.bx) - 0.5 * cell_, 0.0);
        double dy = std::max(std::abs(cy - t.by) - 0.5 * cell_, 0.0);
        if (dx * dx + dy * dy <= t.br2)
          grid_[static_cast<size_t>(i) * grid_n_ + j].push_back(static_cast<int32_t>(ti));
      }
  }
}

const std::vector<int32_t>& PotentialField::cell_for(const SurfacePoint& p) const {
  int i = static_cast<int>((p.x + 1.0) / cell_);
  int j = static_cast<int>((p.y + 1.0) / cell_);
  if (i < 0 || i >= grid_n_ || j < 0 || j >= grid_n_) return empty_;
  return grid_[static_cast<size_t>(i) * grid_n_ + j];
}

void PotentialField::accumulate(const SurfacePoint& p, int order, double& U, double G[2],
                                double H[2][2]) const {
  double x = p.x, y = p.y;
  double A = 1.0 - (x * x + y * y);
  if (A <= 0.0) throw std::domain_error("field evaluated outside the open disk");
  double ax = -2 * x, ay = -2 * y;
  for (int32_t ti : cell_for(p)) {
    const Translate& t = translates_[ti];
    double ddx = x - t.bx, ddy = y - t.by;
    if (ddx * ddx + ddy * ddy > t.br2) continue;
    double sx = x - t.qx, sy = y - t.qy;
    double s = sx * sx + sy * sy;
    double m = 2.0 * s / (A * t.B);
    if (m >= t.mmax) continue;
    double F, Fm, Fmm;
    bump_terms(m, t.mmax, t.inv_w2, F, Fm, Fmm);
    U += t.amp * F;
    if (order < 1) continue;
    double si[2] = {2 * sx, 2 * sy};
    double ai[2] = {ax, ay};
    double mi[2];
    for (int i = 0; i < 2; ++i) mi[i] = (2.0 / t.B) * (si[i] / A - s * ai[i] / (A * A));
    G[0] += t.amp * Fm * mi[0];
    G[1] += t.amp * Fm * mi[1];
    if (order < 2) continue;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double sij = (i == j) ? 2.0 : 0.0;
        double aij = (i == j) ? -2.0 : 0.0;
        double mij = (2.0 / t.B) * (sij / A - si[i] * ai[j] / (A * A) -
                                    (si[j] * ai[i] + s * aij) / (A * A) +
                                    2 * s * ai[i] * ai[j] / (A * A * A));
        H[i][j] += t.amp * (Fmm * mi[i] * mi[j] + Fm * mij);
      }
  }
}

double PotentialField::potential(const SurfacePoint& p) const {
  double U = 0, G[2] = {0, 0}, H[2][2] = {{0, 0}, {0, 0}};
  accumulate(p, 0, U, G, H);
  return U;
}

Vec2 PotentialField::grad(const SurfacePoint& p) const {
  double U = 0, G[2] = {0, 0}, H[2][2] = {{0, 0}, {0, 0}};
  accumulate(p, 1, U, G, H);
  double A = 1.0 - (p.x * p.x + p.y * p.y);
  double invmu2 = A * A / 4.0;  // riemannian gradient = g^{-1} dU
  return {invmu2 * G[0], invmu2 * G[1]};
}

void PotentialField::grad_jacobian(const SurfacePoint& p, Vec2& e, double jac[2][2]) const {
  double U = 0, G[2] = {0, 0}, H[2][2] = {{0, 0}, {0, 0}};
  accumulate(p, 2, U, G, H);
  double A = 1.0 - (p.x * p.x + p.y * p.y);
  double invmu2 = A * A / 4.0;
  e = {invmu2 * G[0], invmu2 * G[1]};
  double dinv[2] = {2.0 * A * (-2 * p.x) / 4.0, 2.0 * A * (-2 * p.y) / 4.0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) jac[i][j] = G[i] * dinv[j] + invmu2 * H[i][j];
}

Vec2 PotentialField::covariant_grad(const SurfacePoint& p, const Vec2& u) const {
  Vec2 e;
  double jac[2][2];
  grad_jacobian(p, e, jac);
  Vec2 du{jac[0][0] * u.u1 + jac[0][1] * u.u2, jac[1][0] * u.u1 + jac[1][1] * u.u2};
  return du + christoffel(p, u, e);
}

double PotentialField::automorphy_defect(const BolzaSurface& surface, int n,
                                         uint64_t seed) const {
  Rng rng(seed);
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = 0.7 * std::sqrt(rng.uniform());
    double a = 6.283185307179586 * rng.uniform();
    SurfacePoint p{r * std::cos(a), r * std::sin(a)};
    const Mobius& g = surface.generator(static_cast<int>(rng.uniform() * 8) % 8);
    Vec2 ep = grad(p);
    scale = std::max({scale, std::abs(ep.u1), std::abs(ep.u2)});
    Vec2 egp = grad(g.apply(p));
    cplx pushed = g.deriv_z(p.z()) * ep.z();
    worst = std::max(worst, std::abs(egp.z() - pushed));
  }
  return worst / std::max(scale, 1e-300);
}

bool PotentialField::is_identically_zero() const {
  for (const auto& b : spec_.bumps)
    if (b.amplitude != 0.0) return false;
  return true;
}

}  // namespace gth
