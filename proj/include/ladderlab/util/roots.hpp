#pragma once

#include <cmath>
#include <limits>

namespace ladderlab {

struct RootResult {
  double x = 0.0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Root of an increasing function g on [lo, hi] with g(lo) <= 0 <= g(hi).
// Newton steps are taken from x0 while they stay inside the bracket;
// otherwise the bracket is bisected. fdf(x, g, dg) fills g(x) and g'(x).
template <typename FdF>
RootResult newton_bisect(FdF&& fdf, double lo, double hi, double x0, int max_iter = 100) {
  RootResult r;
  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  for (int it = 1; it <= max_iter; ++it) {
    double g = 0.0, dg = 0.0;
    fdf(x, g, dg);
    r.iterations = it;
    if (g == 0.0) {
      r.x = x;
      r.lo = r.hi = x;
      r.converged = true;
      return r;
    }
    if (g < 0.0) lo = x; else hi = x;
    double next = (dg > 0.0) ? x - g / dg : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(next);
    if (std::abs(next - x) <= tol || hi - lo <= tol) {
      r.x = next;
      r.lo = lo;
      r.hi = hi;
      r.converged = true;
      return r;
    }
    x = next;
  }
  r.x = x;
  r.lo = lo;
  r.hi = hi;
  return r;
}

}  // namespace ladderlab
