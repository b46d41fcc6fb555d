#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace ladderlab {

// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1], found by
// Newton iteration on P_N in extended precision.
template <std::size_t N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendre() {
    for (std::size_t i = 0; i < N; ++i) {
      long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (N + 0.5L));
      long double dp = 0.0L;
      for (int iter = 0; iter < 100; ++iter) {
        long double p0 = 1.0L, p1 = x;
        for (std::size_t k = 2; k <= N; ++k) {
          const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0L);
        const long double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-19L) break;
      }
      nodes[i] = static_cast<double>(x);
      weights[i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
    }
  }

  static const GaussLegendre& get() {
    static const GaussLegendre rule;
    return rule;
  }

  // Rule applied on [a, b].
  template <typename F>
  double apply(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = a + half;
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += weights[i] * f(mid + half * nodes[i]);
    return s * half;
  }
};

}  // namespace ladderlab
