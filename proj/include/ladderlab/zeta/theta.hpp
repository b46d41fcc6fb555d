#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "ladderlab/error.hpp"
#include "ladderlab/zeta/config.hpp"

namespace ladderlab {

namespace detail {

// Principal-branch log Gamma for Re z > 0, continuous in Im z: shift to
// |z| >= 15 with the recurrence, then Stirling with 12 Bernoulli terms.
inline std::complex<double> log_gamma(std::complex<double> z) {
  // B_{2k} / (2k (2k-1)), k = 1..12
  static constexpr double kStirling[] = {
      1.0 / 12.0,          -1.0 / 360.0,           1.0 / 1260.0,
      -1.0 / 1680.0,       1.0 / 1188.0,           -691.0 / 360360.0,
      1.0 / 156.0,         -3617.0 / 122400.0,     43867.0 / 244188.0,
      -174611.0 / 125400.0, 77683.0 / 5796.0,      -236364091.0 / 1506960.0,
  };
  std::complex<double> shift_log{0.0, 0.0};
  while (std::abs(z) < 15.0) {
    shift_log += std::log(z);
    z += 1.0;
  }
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series{0.0, 0.0};
  std::complex<double> power = inv;
  for (double b : kStirling) {
    series += b * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift_log;
}

// Asymptotic theta in extended precision. The leading term is ~ (t/2) ln t, so
// plain double would lose ~1e-9 absolute at t = 1e6; long double keeps the
// phase good to ~1e-12 there.
inline long double theta_asymptotic_ld(long double t) {
  constexpr long double kPi = 3.141592653589793238462643383279502884L;
  constexpr long double kTwoPi = 2.0L * kPi;
  const long double inv = 1.0L / t;
  const long double inv2 = inv * inv;
  const long double series =
      inv * (1.0L / 48.0L +
             inv2 * (7.0L / 5760.0L +
                     inv2 * (31.0L / 80640.0L + inv2 * (127.0L / 430080.0L +
                                                         inv2 * (511.0L / 1216512.0L)))));
  return 0.5L * t * std::log(t / kTwoPi) - 0.5L * t - kPi / 8.0L + series;
}

inline double theta_exact(double t) {
  const std::complex<double> lg = log_gamma({0.25, 0.5 * t});
  return lg.imag() - 0.5 * t * std::log(std::numbers::pi);
}

}  // namespace detail

// Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) ln pi.
inline double riemann_siegel_theta(double t, const ZEvalConfig& cfg = {}) {
  if (!(t >= 0.0)) throw Error(ErrorKind::domain, "riemann_siegel_theta: t must be >= 0");
  if (t < cfg.t_switch) return detail::theta_exact(t);
  return static_cast<double>(detail::theta_asymptotic_ld(t));
}

}  // namespace ladderlab
