#include "gth/bolza.hpp"

#include <cmath>

#include "gth/rng.hpp"

namespace gth {

BolzaSurface::BolzaSurface() {
  const double pi = 3.14159265358979323846;
  // side pairing translation length: cosh(l/2) = 1 + sqrt(2)
  double lhalf = std::acosh(1.0 + std::sqrt(2.0));
  Mobius T = Mobius::translation_x(2.0 * lhalf);
  for (int k = 0; k < 4; ++k) {
    Mobius r = Mobius::rotation(k * pi / 4.0);
    gens_[k] = r.compose(T).compose(r.inverse()).normalized();
    gens_[k + 4] = gens_[k].inverse();
  }
  // relation g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3 = +I (verified by relation_residual)
  relation_ = {0, 5, 2, 7, 4, 1, 6, 3};

  inradius_ = lhalf;                                    // center-to-side distance
  circumradius_ = std::acosh(3.0 + 2.0 * std::sqrt(2.0));  // center-to-vertex

  // side k is the perpendicular bisector of [0, g_k(0)]: it crosses the ray at
  // euclidean radius tanh(l/4); as a boundary-orthogonal circle c - rho = tanh(l/4),
  // c^2 - rho^2 = 1.
  double rmid = std::tanh(lhalf / 2.0);
  double c = 0.5 * (rmid + 1.0 / rmid);
  double rho = 0.5 * (1.0 / rmid - rmid);
  half_angle_ = std::acos(1.0 / c);
  for (int k = 0; k < 8; ++k) {
    double ang = k * pi / 4.0;
    cplx dir = std::polar(1.0, ang);
    sides_[k].center = c * dir;
    sides_[k].radius = rho;
    sides_[k].normal = dir;
    sides_[k].offset = 1.0 / c;
    // exiting through side k means moving in direction k*pi/4; pull back with the
    // translation along the opposite direction
    sides_[k].pairing_letter = static_cast<uint8_t>(k < 4 ? k + 4 : k - 4);
  }
}

Mobius BolzaSurface::word_matrix(const std::vector<uint8_t>& word) const {
  Mobius m = Mobius::identity();
  for (uint8_t w : word) m = m.compose(gens_[w]);
  return m.normalized();
}

double BolzaSurface::domain_margin(const SurfacePoint& p) const {
  cplx zk = poincare_to_klein(p.z());
  double margin = 1e300;
  for (const auto& s : sides_) {
    double m = s.offset - (zk * std::conj(s.normal)).real();
    if (m < margin) margin = m;
  }
  return margin;
}

bool BolzaSurface::in_domain(const SurfacePoint& p, double tol) const {
  if (p.x * p.x + p.y * p.y >= 1.0) return false;
  return domain_margin(p) >= -tol;
}

std::vector<uint8_t> BolzaSurface::reduce(PhasePoint& state, int max_word) const {
  std::vector<uint8_t> word;
  for (int it = 0; it < max_word; ++it) {
    if (in_domain(state.p)) return word;
    int best = -1;
    double br = std::abs(state.p.z());
    for (int i = 0; i < 8; ++i) {
      double r = std::abs(gens_[i].apply_z(state.p.z()));
      if (r < br - 1e-15) {
        br = r;
        best = i;
      }
    }
    if (best < 0) return word;  // Dirichlet tie on the boundary: accept as reduced
    state = gens_[best].apply(state);
    word.push_back(static_cast<uint8_t>(best));
  }
  throw std::runtime_error("reduce: point not reachable within the word-length cap");
}

std::vector<uint8_t> BolzaSurface::reduce_point(SurfacePoint& p, int max_word) const {
  PhasePoint th{p, {1, 0}};
  auto w = reduce(th, max_word);
  p = th.p;
  return w;
}

double BolzaSurface::deck_distance(const PhasePoint& a, const PhasePoint& b) const {
  auto dist = [&](const PhasePoint& u, const PhasePoint& v) {
    return std::abs(u.p.z() - v.p.z()) + std::abs(u.v.z() - v.v.z());
  };
  double best = dist(a, b);
  for (int i = 0; i < 8; ++i) {
    PhasePoint bi = gens_[i].apply(b);
    best = std::min(best, dist(a, bi));
    for (int j = 0; j < 8; ++j) {
      if (j == (i + 4) % 8) continue;
      best = std::min(best, dist(a, gens_[j].apply(bi)));
    }
  }
  return best;
}

double BolzaSurface::relation_residual() const {
  Mobius m = Mobius::identity();
  for (uint8_t w : relation_) m = m.compose(gens_[w]);
  double dplus = std::abs(m.a - 1.0) + std::abs(m.b);
  double dminus = std::abs(m.a + 1.0) + std::abs(m.b);
  return std::min(dplus, dminus);
}

double BolzaSurface::side_pairing_residual() const {
  // g_k must map side S_{k+4} onto side S_k
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const auto& src = sides_[(k + 4) % 8];
    const auto& dst = sides_[k];
    const Mobius& g = gens_[k < 4 ? k : k - 4];
    const Mobius& map = (k < 4) ? g : g.inverse();
    for (int j = -3; j <= 3; ++j) {
      cplx z = src.center + src.radius * std::polar(1.0, std::arg(-src.center) + 0.12 * j);
      if (std::abs(z) >= 1.0) continue;
      cplx w = map.apply_z(z);
      worst = std::max(worst, std::abs(std::abs(w - dst.center) - dst.radius));
    }
  }
  return worst;
}

double BolzaSurface::metric_invariance_residual(int n, uint64_t seed) const {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    // random group element from a short word, random point and tangents
    Mobius g = Mobius::identity();
    int len = 1 + static_cast<int>(rng.uniform() * 4);
    for (int j = 0; j < len; ++j)
      g = g.compose(gens_[static_cast<int>(rng.uniform() * 8) % 8]);
    double r = 0.8 * std::sqrt(rng.uniform());
    double a = 2 * 3.14159265358979323846 * rng.uniform();
    SurfacePoint p{r * std::cos(a), r * std::sin(a)};
    Vec2 u{rng.normal(), rng.normal()}, w{rng.normal(), rng.normal()};
    double before = metric_inner(p, u, w);
    SurfacePoint gp = g.apply(p);
    cplx d = g.deriv_z(p.z());
    Vec2 gu = Vec2::of(d * u.z()), gw = Vec2::of(d * w.z());
    double after = metric_inner(gp, gu, gw);
    worst = std::max(worst, std::abs(after - before) / std::max(1.0, std::abs(before)));
  }
  return worst;
}

}  // namespace gth
