// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
#pragma once

#include <cmath>
#include <vector>

namespace gth {

class GaussLegendre {
 public:
  explicit GaussLegendre(int n) : x_(n), w_(n) {
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(pi * (n - i - 0.25) / (n + 0.5));  // increasing in i
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      x_[i] = x;
      w_[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
  int size() const { return static_cast<int>(x_.size()); }
  double node(int i) const { return x_[i]; }
  double weight(int i) const { return w_[i]; }

  // integrate f over [a, b] with one panel
  template <class F>
  double integrate(F&& f, double a, double b) const {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a), acc = 0.0;
    for (int i = 0; i < size(); ++i) acc += w_[i] * f(mid + half * x_[i]);
    return half * acc;
  }

 private:
  std::vector<double> x_, w_;
};

}  // namespace gth
