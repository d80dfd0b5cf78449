#include "gth/words.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gth {

bool is_cyclically_reduced(const Word& w) {
  if (w.empty()) return false;
  size_t n = w.size();
  for (size_t i = 0; i < n; ++i)
    if (w[(i + 1) % n] == letter_inverse(w[i])) return false;
  return true;
}

Word word_inverse(const Word& w) {
  Word out(w.size());
  for (size_t i = 0; i < w.size(); ++i) out[i] = letter_inverse(w[w.size() - 1 - i]);
  return out;
}

Word canonical_word(const Word& w) {
  Word best;
  Word inv = word_inverse(w);
  for (const Word& src : {w, inv}) {
    size_t n = src.size();
    for (size_t r = 0; r < n; ++r) {
      Word rot(n);
      for (size_t i = 0; i < n; ++i) rot[i] = src[(r + i) % n];
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (uint8_t c : w) s += (c < 4) ? static_cast<char>('a' + c) : static_cast<char>('A' + c - 4);
  return s;
}

Word word_from_string(const std::string& s) {
  Word w;
  for (char c : s) {
    if (c >= 'a' && c <= 'd') w.push_back(static_cast<uint8_t>(c - 'a'));
    else if (c >= 'A' && c <= 'D') w.push_back(static_cast<uint8_t>(c - 'A' + 4));
    else throw std::invalid_argument("bad word letter");
  }
  return w;
}

bool is_proper_power(const Word& w) {
  size_t n = w.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = (w[i] == w[i % d]);
    if (ok) return true;
  }
  return false;
}

namespace {

// enumerate canonical cyclically reduced words of exact length n, first letter fixed
void enum_fixed_first(int n, uint8_t first, std::vector<Word>& out) {
  Word w(static_cast<size_t>(n));
  w[0] = first;
  // canonical words start with their smallest letter
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      if (w[0] == letter_inverse(w[n - 1])) return;
      if (canonical_word(w) == w) out.push_back(w);
      return;
    }
    for (uint8_t c = first; c < 8; ++c) {  // letters < first cannot appear in a canonical word
      if (c == letter_inverse(w[pos - 1])) continue;
      w[pos] = c;
      self(self, pos + 1);
    }
  };
  rec(rec, 1);
}

std::vector<ConjugacyClass> finalize(const BolzaSurface& surface, std::vector<Word>&& words) {
  std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<ConjugacyClass> classes;
  classes.reserve(words.size());
  for (auto& w : words) {
    ConjugacyClass c;
    c.matrix = surface.word_matrix(w);
    c.trace_mag = std::abs(c.matrix.trace());
    c.word = std::move(w);
    if (c.trace_mag <= 2.0)
      throw std::runtime_error("non-hyperbolic class in a torsion-free cocompact group");
    classes.push_back(std::move(c));
  }
  return classes;
}

}  // namespace

std::vector<ConjugacyClass> enumerate_classes_serial(const BolzaSurface& surface, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len >= 1 required");
  std::vector<Word> words;
  for (int n = 1; n <= max_len; ++n)
    for (uint8_t first = 0; first < 8; ++first) enum_fixed_first(n, first, words);
  return finalize(surface, std::move(words));
}

std::vector<ConjugacyClass> enumerate_classes(const BolzaSurface& surface, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len >= 1 required");
  // (n, first-letter) work items; each item produces an independent word list
  struct Item { int n; uint8_t first; };
  std::vector<Item> items;
  for (int n = 1; n <= max_len; ++n)
    for (uint8_t f = 0; f < 8; ++f) items.push_back({n, f});
  std::vector<std::vector<Word>> parts(items.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(items.size()); ++i)
    enum_fixed_first(items[i].n, items[i].first, parts[i]);
  std::vector<Word> words;
  for (auto& p : parts)
    for (auto& w : p) words.push_back(std::move(w));
  return finalize(surface, std::move(words));
}

ClosedGeodesic geodesic_from_class(const BolzaSurface& surface, const ConjugacyClass& c) {
  if (c.trace_mag <= 2.0) throw std::domain_error("non-hyperbolic class");
  ClosedGeodesic g;
  g.cls = c;
  g.length = 2.0 * std::acosh(c.trace_mag / 2.0);

  // closest point of the axis to the origin, via the Klein chord midpoint
  auto [zrep, zatt] = c.matrix.axis_endpoints();
  cplx d = zatt - zrep;
  double lam = ((-zrep) * std::conj(d)).real() / std::norm(d);
  cplx foot_k = zrep + lam * d;
  SurfacePoint p = SurfacePoint::of(klein_to_poincare(foot_k));

  // direction along the axis toward the attracting endpoint: pull the axis to a
  // diameter through the origin, read the direction there, push back
  Mobius M = Mobius::origin_to(p, 0.0);
  cplx za = M.inverse().apply_z(zatt);
  za /= std::abs(za);
  Vec2 dir = Vec2::of(M.deriv_z(cplx(0, 0)) * za * 0.5);
  PhasePoint th = normalized_state({p, dir});

  // reduce into the fundamental domain, conjugating the matrix along
  Mobius m = c.matrix;
  auto word = surface.reduce(th);
  for (uint8_t wl : word) {
    const Mobius& gl = surface.generator(wl);
    m = gl.compose(m).compose(gl.inverse()).normalized();
  }
  g.base = th;
  g.deck = m;
  return g;
}

bool conjugate_in_ball(const BolzaSurface& surface, const Mobius& a, const Mobius& b,
                       int ball_len, bool unoriented, double tol) {
  auto close_pm = [&](const Mobius& m1, const Mobius& m2) {
    double dp = std::abs(m1.a - m2.a) + std::abs(m1.b - m2.b);
    double dm = std::abs(m1.a + m2.a) + std::abs(m1.b + m2.b);
    return std::min(dp, dm) < tol * std::max(1.0, std::abs(m2.a));
  };
  Mobius binv = b.inverse();
  std::vector<Mobius> ball{Mobius::identity()};
  std::vector<Mobius> frontier = ball;
  std::vector<Word> fwords{{}};
  for (int depth = 0; depth < ball_len; ++depth) {
    std::vector<Mobius> nf;
    std::vector<Word> nw;
    for (size_t i = 0; i < frontier.size(); ++i) {
      for (uint8_t l = 0; l < 8; ++l) {
        if (!fwords[i].empty() && l == letter_inverse(fwords[i].back())) continue;
        nf.push_back(frontier[i].compose(surface.generator(l)).normalized());
        Word w = fwords[i];
        w.push_back(l);
        nw.push_back(std::move(w));
      }
    }
    for (size_t i = 0; i < nf.size(); ++i) {
      Mobius conj = nf[i].compose(a).compose(nf[i].inverse());
      if (close_pm(conj, b)) return true;
      if (unoriented && close_pm(conj, binv)) return true;
    }
    frontier = std::move(nf);
    fwords = std::move(nw);
  }
  // also the identity conjugator
  if (close_pm(a, b)) return true;
  if (unoriented && close_pm(a, binv)) return true;
  return false;
}

}  // namespace gth
