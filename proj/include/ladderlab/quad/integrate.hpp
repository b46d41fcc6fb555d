#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ladderlab/error.hpp"
#include "ladderlab/quad/gauss_legendre.hpp"
#include "ladderlab/util/parallel.hpp"
#include "ladderlab/util/summation.hpp"

namespace ladderlab {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::int64_t panels_used = 0;
  std::int64_t evals = 0;
  // Share of the estimate that integrand noise (QuadOptions) can account for;
  // the tolerance test is against tol + noise_floor.
  double noise_floor = 0.0;
};

// Raised when the achieved error estimate exceeds the requested tolerance;
// carries the estimate so the caller may accept or refine.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, QuadResult achieved)
      : Error(ErrorKind::tolerance_not_met, what), achieved_(achieved) {}
  const QuadResult& achieved() const noexcept { return achieved_; }

 private:
  QuadResult achieved_;
};

// Half of the mean zero spacing 2 pi / ln(t / 2 pi) of Z near t, capped at
// `cap`. Below t = 2 pi e the log is clamped to 1.
inline double oscillation_panel_width(double t, double cap) {
  const double lg = std::log(std::max(t, 1.0) / (2.0 * std::numbers::pi));
  return std::min(cap, std::numbers::pi / std::max(1.0, lg));
}

struct QuadOptions {
  double width_cap = 1.0;  // upper bound on the base panel width
  int max_bisections = 12;  // per base panel
  bool parallel = true;
  bool throw_on_tolerance = true;
  // Bound on the error of each integrand value: |df| <= rel_noise |f| + abs_noise.
  // Bisection stops once |GL16 - GL8| is within what that noise can produce;
  // the noise itself is not added to the returned estimate.
  double rel_noise = 0.0;
  double abs_noise = 0.0;
};

namespace detail {

struct PanelOutcome {
  double value = 0.0;
  double error = 0.0;
  double noise = 0.0;
  std::int64_t panels = 0;
  std::int64_t evals = 0;
};

// Order-16 value with |GL16 - GL8| as the error estimate; bisects while the
// estimate exceeds the panel tolerance and is above the rounding and noise
// floor. Only the rounding part of the floor enters the returned estimate.
template <typename F>
PanelOutcome adaptive_panel(F& f, double a, double b, double tol, int depth_left, const QuadOptions& opts) {
  const auto& g8 = GaussLegendre<8>::get();
  const auto& g16 = GaussLegendre<16>::get();
  const double half = 0.5 * (b - a);
  const double mid = a + half;
  double s16 = 0.0, a16 = 0.0, s8 = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    const double v = f(mid + half * g16.nodes[i]);
    s16 += g16.weights[i] * v;
    a16 += g16.weights[i] * std::abs(v);
  }
  for (std::size_t i = 0; i < 8; ++i) s8 += g8.weights[i] * f(mid + half * g8.nodes[i]);
  s16 *= half;
  s8 *= half;
  a16 *= std::abs(half);
  const double err = std::abs(s16 - s8);
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * a16;
  const double noise = 2.0 * opts.rel_noise * a16 + 2.0 * opts.abs_noise * std::abs(b - a);
  if (err <= tol || err <= rounding + noise || depth_left == 0 || !(b > a)) {
    return {s16, std::max(err, rounding), noise, 1, 24};
  }
  const PanelOutcome left = adaptive_panel(f, a, mid, 0.5 * tol, depth_left - 1, opts);
  const PanelOutcome right = adaptive_panel(f, mid, b, 0.5 * tol, depth_left - 1, opts);
  return {left.value + right.value, left.error + right.error, left.noise + right.noise,
          left.panels + right.panels, 24 + left.evals + right.evals};
}

}  // namespace detail

// Integral of f over [a, b]. Base panels have width oscillation_panel_width(b)
// (the narrowest on the interval, since the width shrinks with t); each is
// integrated with Gauss-Legendre 16 and checked against Gauss-Legendre 8.
// Panel results are combined by pairwise summation in panel order, so the
// value does not depend on the number of worker threads.
template <typename F>
QuadResult integrate_oscillatory(F&& f, double a, double b, double tol, const QuadOptions& opts = {}) {
  if (!(a <= b)) throw Error(ErrorKind::domain, "integrate_oscillatory: requires a <= b");
  if (!(tol > 0.0)) throw Error(ErrorKind::domain, "integrate_oscillatory: requires tol > 0");
  const double width = oscillation_panel_width(b, opts.width_cap);
  const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / width)));
  const double h = (b - a) / static_cast<double>(panels);
  const double panel_tol = tol / static_cast<double>(panels);
  std::vector<detail::PanelOutcome> out(panels);
  auto body = [&](std::size_t i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = (i + 1 == panels) ? b : a + h * static_cast<double>(i + 1);
    out[i] = detail::adaptive_panel(f, lo, hi, panel_tol, opts.max_bisections, opts);
  };
  if (opts.parallel) {
    parallel_for(panels, body, 8);
  } else {
    for (std::size_t i = 0; i < panels; ++i) body(i);
  }
  std::vector<double> values(panels), errors(panels), noise(panels);
  QuadResult res;
  for (std::size_t i = 0; i < panels; ++i) {
    values[i] = out[i].value;
    errors[i] = out[i].error;
    noise[i] = out[i].noise;
    res.panels_used += out[i].panels;
    res.evals += out[i].evals;
  }
  res.value = pairwise_sum(values);
  res.abs_error_estimate = pairwise_sum(errors);
  res.noise_floor = pairwise_sum(noise);
  if (opts.throw_on_tolerance && res.abs_error_estimate > tol + res.noise_floor) {
    std::ostringstream msg;
    msg << "integrate_oscillatory: error estimate " << res.abs_error_estimate
        << " exceeds tolerance " << tol << " on [" << a << ", " << b << "]";
    throw QuadratureError(msg.str(), res);
  }
  return res;
}

}  // namespace ladderlab
