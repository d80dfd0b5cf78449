// The genus-2 Bolza surface as a Fuchsian quotient: regular hyperbolic octagon
// with opposite sides identified by the translations g_k = R_{k pi/4} T R_{-k pi/4},
// cosh(l/2) = 1 + sqrt(2).
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gth/geometry.hpp"

namespace gth {

// generator alphabet: letters 0..3 are g_0..g_3, letters 4..7 their inverses
inline uint8_t letter_inverse(uint8_t i) { return static_cast<uint8_t>((i + 4) % 8); }

struct OctagonSide {
  // Poincare model: boundary-orthogonal circle |z - center| = radius
  cplx center;
  double radius;
  // Klein model: half-plane Re(z * conj(normal)) <= offset (inside the domain)
  cplx normal;
  double offset;
  uint8_t pairing_letter;  // alphabet index applied when exiting through this side
};

class BolzaSurface {
 public:
  BolzaSurface();

  const Mobius& generator(uint8_t letter) const { return gens_[letter]; }
  const std::array<OctagonSide, 8>& sides() const { return sides_; }
  const std::vector<uint8_t>& relation_word() const { return relation_; }

  Mobius word_matrix(const std::vector<uint8_t>& word) const;

  // signed margin to the domain boundary: >= 0 inside the closed octagon
  double domain_margin(const SurfacePoint& p) const;
  bool in_domain(const SurfacePoint& p, double tol = 1e-12) const;

  // greedy Dirichlet reduction; returns the applied letters in application order
  // (state_out = g_{w_n} ... g_{w_1} state_in). Throws after max_word moves.
  std::vector<uint8_t> reduce(PhasePoint& state, int max_word = 32) const;
  std::vector<uint8_t> reduce_point(SurfacePoint& p, int max_word = 32) const;

  // smallest distance between the two states modulo a short deck ball
  // (identity, the 8 generators and their 64 two-letter products);
  // enough to compare points of the closed octagon
  double deck_distance(const PhasePoint& a, const PhasePoint& b) const;

  double octagon_inradius() const { return inradius_; }
  double octagon_circumradius() const { return circumradius_; }
  double side_halfwidth_angle() const { return half_angle_; }  // chord spans k*pi/4 +- this

  // numerical checks used by the validation suite ("octagon construction oracle")
  double relation_residual() const;             // | product over relation - (+-I) |
  double side_pairing_residual() const;         // max over sides of pairing mismatch
  double metric_invariance_residual(int n, uint64_t seed) const;

 private:
  std::array<Mobius, 8> gens_;
  std::array<OctagonSide, 8> sides_;
  std::vector<uint8_t> relation_;
  double inradius_ = 0, circumradius_ = 0, half_angle_ = 0;
};

}  // namespace gth
