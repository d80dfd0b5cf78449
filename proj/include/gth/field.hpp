// The perturbation family E_lambda = lambda * E'_0 with E'_0 = grad U and
// U a truncated automorphic sum of compactly supported bumps,
//   U(p) = sum_{|word|<=trunc} sum_centers amp * exp(-1/(1 - (d(p, g c)/width)^2)).
// Value, Riemannian gradient and its covariant derivative are all analytic.
#pragma once

#include <cstdint>
#include <vector>

#include "gth/bolza.hpp"
#include "gth/geometry.hpp"

namespace gth {

struct BumpSpec {
  SurfacePoint center;
  double amplitude = 1.0;
  double width = 1.0;  // hyperbolic support radius
};

struct FieldSpec {
  std::vector<BumpSpec> bumps;
  int truncation = 6;  // word length of the automorphic sum
};

class PotentialField {
 public:
  PotentialField(const BolzaSurface& surface, FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  size_t translate_count() const { return translates_.size(); }

  double potential(const SurfacePoint& p) const;

  // E'_0(p): Riemannian gradient, coordinate components
  Vec2 grad(const SurfacePoint& p) const;

  // euclidean Jacobian dE^i/dx^j of the gradient components
  void grad_jacobian(const SurfacePoint& p, Vec2& e, double jac[2][2]) const;

  // covariant derivative (nabla_u E'_0)(p), coordinate components
  Vec2 covariant_grad(const SurfacePoint& p, const Vec2& u) const;

  // E_lambda(p) = lambda * E'_0(p)
  Vec2 eval_E(double lambda, const SurfacePoint& p) const {
    Vec2 g = grad(p);
    return {lambda * g.u1, lambda * g.u2};
  }

  // measured automorphy defect: max relative deviation of dg(E(p)) vs E(g p)
  // over n sampled (generator, point) pairs
  double automorphy_defect(const BolzaSurface& surface, int n, uint64_t seed) const;

  bool is_identically_zero() const;

 private:
  struct Translate {
    double qx, qy;     // bump center image
    double B;          // 1 - |q|^2
    double amp;
    double mmax;       // support bound: cosh(width) - 1
    double inv_w2;     // 1/width^2
    // euclidean bounding disk of the hyperbolic support ball
    double bx, by, br2;
  };

  void accumulate(const SurfacePoint& p, int order, double& U, double G[2],
                  double H[2][2]) const;
  const std::vector<int32_t>& cell_for(const SurfacePoint& p) const;

  FieldSpec spec_;
  std::vector<Translate> translates_;
  // uniform grid over [-1,1]^2 holding indices of translates whose support
  // bounding disk overlaps the cell
  int grid_n_ = 0;
  double cell_ = 0.0;
  std::vector<std::vector<int32_t>> grid_;
  std::vector<int32_t> empty_;
};

}  // namespace gth
