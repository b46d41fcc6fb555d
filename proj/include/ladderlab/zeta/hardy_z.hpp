#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "ladderlab/detail/rs_coefficients.hpp"
#include "ladderlab/error.hpp"
#include "ladderlab/zeta/config.hpp"
#include "ladderlab/zeta/theta.hpp"

namespace ladderlab {

namespace detail {

// ln n split into hi + lo doubles and n^{-1/2}, for the Riemann-Siegel main sum.
struct MainSumTables {
  static constexpr std::size_t kMaxTerms = std::size_t{1} << 14;  // t up to ~1.7e9
  std::vector<double> log_hi, log_lo, inv_sqrt;

  MainSumTables() : log_hi(kMaxTerms + 1), log_lo(kMaxTerms + 1), inv_sqrt(kMaxTerms + 1) {
    for (std::size_t n = 1; n <= kMaxTerms; ++n) {
      const long double l = std::log(static_cast<long double>(n));
      log_hi[n] = static_cast<double>(l);
      log_lo[n] = static_cast<double>(l - static_cast<long double>(log_hi[n]));
      inv_sqrt[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
  }

  static const MainSumTables& get() {
    static const MainSumTables tables;
    return tables;
  }
};

// cos(r) for |r| <= pi/2 (+ a little slack); Taylor through r^24.
inline double cos_reduced(double r) {
  const double w = r * r;
  double p = 1.0 / 620448401733239439360000.0;  // 1/24!
  p = p * w - 1.0 / 1124000727777607680000.0;
  p = p * w + 1.0 / 2432902008176640000.0;
  p = p * w - 1.0 / 6402373705728000.0;
  p = p * w + 1.0 / 20922789888000.0;
  p = p * w - 1.0 / 87178291200.0;
  p = p * w + 1.0 / 479001600.0;
  p = p * w - 1.0 / 3628800.0;
  p = p * w + 1.0 / 40320.0;
  p = p * w - 1.0 / 720.0;
  p = p * w + 1.0 / 24.0;
  p = p * w - 0.5;
  return p * w + 1.0;
}

// sum_{n=1}^{count} n^{-1/2} cos(theta - t ln n), with theta = theta_hi + theta_lo.
// The phase is carried in double-double and reduced modulo pi with an exact
// FMA step, so the result does not degrade as t ln n grows.
inline double rs_main_sum(double t, double theta_hi, double theta_lo, std::size_t count) {
  const auto& tab = MainSumTables::get();
  const double* lhi = tab.log_hi.data() + 1;
  const double* llo = tab.log_lo.data() + 1;
  const double* isq = tab.inv_sqrt.data() + 1;
  constexpr double kInvPi = 1.0 / std::numbers::pi;
  constexpr double kPiHi = std::numbers::pi;
  constexpr double kPiLo = 1.2246467991473532e-16;
  constexpr double kRound = 6755399441055744.0;  // 1.5 * 2^52
  double sum = 0.0;
#pragma omp simd reduction(+ : sum)
  for (std::size_t n = 0; n < count; ++n) {
    const double p = t * lhi[n];
    const double p_err = std::fma(t, lhi[n], -p) + t * llo[n];
    const double s = theta_hi - p;
    const double bb = s - theta_hi;
    const double s_err = (theta_hi - (s - bb)) + (-p - bb);
    // shifted = 1.5 * 2^52 + round(s / pi); its last mantissa bit is the
    // parity of the quadrant count, i.e. the sign of cos(s) relative to cos(r).
    const double shifted = s * kInvPi + kRound;
    const double k = shifted - kRound;
    double r = std::fma(-k, kPiHi, s);
    r = std::fma(-k, kPiLo, r) + ((s_err + theta_lo) - p_err);
    const std::uint64_t flip = std::bit_cast<std::uint64_t>(shifted) << 63;
    const double c = std::bit_cast<double>(std::bit_cast<std::uint64_t>(cos_reduced(r)) ^ flip);
    sum += isq[n] * c;
  }
  return sum;
}

template <std::size_t N>
double poly_eval(const std::array<double, N>& c, double w) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * w + c[i];
  return acc;
}

inline double rs_correction(int k, double z) {
  const double w = z * z;
  switch (k) {
    case 0: return poly_eval(kRsC0, w);
    case 1: return z * poly_eval(kRsC1, w);
    case 2: return poly_eval(kRsC2, w);
    case 3: return z * poly_eval(kRsC3, w);
    default: return poly_eval(kRsC4, w);
  }
}

// Truncation bound d_K t^{-(2K+3)/4} of the Riemann-Siegel formula after K
// corrections, valid for t >= 200.
inline double rs_error_bound(int correction_terms, double t) {
  static constexpr double kD[] = {0.127, 0.053, 0.011, 0.031, 0.017};
  return kD[correction_terms] * std::pow(t, -(2.0 * correction_terms + 3.0) / 4.0);
}

inline double hardy_z_riemann_siegel(double t, int correction_terms) {
  const long double theta = theta_asymptotic_ld(t);
  const double theta_hi = static_cast<double>(theta);
  const double theta_lo = static_cast<double>(theta - static_cast<long double>(theta_hi));
  const double a = std::sqrt(t / (2.0 * std::numbers::pi));
  const auto count = static_cast<std::size_t>(a);
  if (count > MainSumTables::kMaxTerms) {
    throw Error(ErrorKind::domain, "hardy_z: t too large for the main-sum tables");
  }
  const double main = 2.0 * rs_main_sum(t, theta_hi, theta_lo, count);
  const double z = 2.0 * (a - static_cast<double>(count)) - 1.0;
  const double inv_a = 1.0 / a;
  double corr = 0.0;
  double scale = 1.0;
  for (int k = 0; k <= correction_terms; ++k) {
    corr += rs_correction(k, z) * scale;
    scale *= inv_a;
  }
  const double sign = (count % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return main + sign * corr / std::sqrt(a);
}

// B_{2k} / (2k)! for k = 1..30.
inline const std::vector<double>& bernoulli_over_factorial() {
  static const std::vector<double> table = [] {
    std::vector<double> b(31, 0.0);
    for (int k = 1; k <= 30; ++k) {
      const double mag = 2.0 * std::riemann_zeta(2.0 * k) /
                         std::pow(2.0 * std::numbers::pi, 2.0 * k);
      b[k] = (k % 2 == 1) ? mag : -mag;
    }
    return b;
  }();
  return table;
}

// zeta(1/2 + it) by Euler-Maclaurin summation in double precision.
inline std::complex<double> zeta_critical_em(double t) {
  using cd = std::complex<double>;
  const cd s{0.5, t};
  const std::size_t n_terms = 10 + static_cast<std::size_t>(std::ceil(std::abs(t) / std::numbers::pi));
  cd sum{0.0, 0.0};
  for (std::size_t n = 1; n < n_terms; ++n) {
    sum += std::exp(-s * std::log(static_cast<double>(n)));
  }
  const double big_n = static_cast<double>(n_terms);
  const double log_n = std::log(big_n);
  const cd n_pow = std::exp(-s * log_n);  // N^{-s}
  sum += n_pow * big_n / (s - 1.0) + 0.5 * n_pow;
  const auto& bf = bernoulli_over_factorial();
  cd rising = s;  // s (s+1) ... (s+2k-2)
  cd power = n_pow / big_n;  // N^{-s-1}
  const double inv_n2 = 1.0 / (big_n * big_n);
  for (int k = 1; k <= 30; ++k) {
    const cd term = bf[k] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power *= inv_n2;
  }
  return sum;
}

inline double hardy_z_direct(double t) {
  const std::complex<double> z = std::polar(1.0, theta_exact(t)) * zeta_critical_em(t);
  return z.real();
}

}  // namespace detail

// Estimated absolute error of hardy_z(t) under cfg.
inline double hardy_z_error_estimate(double t, const ZEvalConfig& cfg = {}) {
  t = std::abs(t);
  if (t < cfg.t_switch) return 1e-12;
  return detail::rs_error_bound(cfg.correction_terms, t) + 1e-13 * std::sqrt(std::sqrt(t));
}

// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it). Even in t.
inline double hardy_z(double t, const ZEvalConfig& cfg = {}) {
  t = std::abs(t);
  if (t < cfg.t_switch) return detail::hardy_z_direct(t);
  if (hardy_z_error_estimate(t, cfg) > cfg.target_abs_error) {
    throw Error(ErrorKind::accuracy,
                "hardy_z: target_abs_error " + std::to_string(cfg.target_abs_error) +
                    " unattainable at t = " + std::to_string(t) + " with " +
                    std::to_string(cfg.correction_terms) +
                    " correction terms; raise correction_terms or lower the t range");
  }
  return detail::hardy_z_riemann_siegel(t, cfg.correction_terms);
}

}  // namespace ladderlab
