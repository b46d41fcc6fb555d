#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ladderlab/error.hpp"
#include "ladderlab/experiments/config.hpp"
#include "ladderlab/ladder/chain.hpp"
#include "ladderlab/ladder/phi1.hpp"
#include "ladderlab/quad/integrate.hpp"
#include "ladderlab/zeta/hardy_z.hpp"

namespace ladderlab {

namespace detail {

// out[k] = phi1^k(t) for k = 0..m.
inline void iterates(double t, int m, const LadderTable& table, double* out) {
  out[0] = t;
  for (int k = 1; k <= m; ++k) out[k] = table.phi1(out[k - 1]);
}

inline constexpr int kMaxDepth = 64;

// Relative noise of one Z^2 factor near t: an argument error of a few ulps
// of t (phi1 is only resolved to that level) moves Z by about |Z| ln t times
// the error.
inline double z2_relative_noise(double t) {
  return 16.0 * std::numeric_limits<double>::epsilon() * t * std::log(t);
}

// Quadrature options for an integrand built from `factors` such factors on
// [T, t_end]. Where Z peaks, phi1' = Z^2 / G' is large and the deeper
// iterates sweep through many zeros per unit of t, so bisection must be
// allowed to go much deeper than for Z^2 alone.
inline QuadOptions noisy_product_options(double t_end, int factors) {
  QuadOptions o;
  o.rel_noise = factors * z2_relative_noise(t_end);
  o.max_bisections = 16;
  return o;
}

inline void check_depth(int n) {
  if (n + 2 > kMaxDepth) throw Error(ErrorKind::usage, "experiment: n too large");
}

// prod_{k=0}^n Z^2[phi1^k(t)]
inline double z2_product(double t, int n, const LadderTable& table, const ZEvalConfig& cfg) {
  std::array<double, kMaxDepth> x;
  iterates(t, n, table, x.data());
  double p = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double z = hardy_z(x[static_cast<std::size_t>(k)], cfg);
    p *= z * z;
  }
  return p;
}

}  // namespace detail

// int_T^{T+U} prod_{k=0}^n Z^2[phi1^k(t)] dt. The absolute tolerance is
// quad_tol * U ln^{n+1} T, the expected size of the integral.
inline QuadResult product_integral(const ExperimentConfig& config, const LadderTable& table,
                                   const ZEvalConfig& cfg) {
  config.validate(table.constants());
  detail::check_depth(config.n);
  const double T = config.T, U = config.U();
  const double tol = config.quad_tol * std::max(1.0, U) * std::pow(std::log(T), config.n + 1);
  const int n = config.n;
  return integrate_oscillatory([&](double t) { return detail::z2_product(t, n, table, cfg); }, T, T + U, tol,
                               detail::noisy_product_options(T + U, n + 1));
}

inline QuadResult product_integral(const ExperimentConfig& config, const LadderTable& table) {
  return product_integral(config, table, table.z_config());
}

// product_integral / (U ln^{n+1} T)
inline double theorem_ratio(const ExperimentConfig& config, const LadderTable& table, const ZEvalConfig& cfg) {
  const double U = config.U();
  if (!(U > 0.0)) throw Error(ErrorKind::usage, "theorem_ratio: requires U > 0");
  const QuadResult q = product_integral(config, table, cfg);
  return q.value / (U * std::pow(std::log(config.T), config.n + 1));
}

inline double theorem_ratio(const ExperimentConfig& config, const LadderTable& table) {
  return theorem_ratio(config, table, table.z_config());
}

// Ratios on the windows [T + jU, T + (j+1)U], j = 0..count-1.
inline std::vector<double> window_ratios(const ExperimentConfig& config, const LadderTable& table,
                                         const ZEvalConfig& cfg, int count) {
  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    ExperimentConfig c = config;
    c.window_length = config.U();
    c.T = config.T + j * config.U();
    out.push_back(theorem_ratio(c, table, cfg));
  }
  return out;
}

// A test function with its primitive.
struct TestFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> primitive;
};

inline std::vector<TestFunction> standard_test_functions() {
  return {
      {"one", [](double) { return 1.0; }, [](double x) { return x; }},
      {"x", [](double x) { return x; }, [](double x) { return 0.5 * x * x; }},
      {"cos_x_over_1e3", [](double x) { return std::cos(x / 1e3); }, [](double x) { return 1e3 * std::sin(x / 1e3); }},
  };
}

struct SubstitutionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / max(1, |rhs|)
  QuadResult quad;
};

// int_T^{T+U} f[phi1(t)] tilde_z2(t) dt against int_{phi1(T)}^{phi1(T+U)} f.
// Requires U <= T / ln T.
inline SubstitutionCheck lemma_substitution_residual(const TestFunction& fn, const ExperimentConfig& config,
                                                     const LadderTable& table, const ZEvalConfig& cfg) {
  config.validate(table.constants());
  const double T = config.T, U = config.U();
  if (!(U <= T / std::log(T))) {
    std::ostringstream msg;
    msg << "substitution check: U = " << U << " exceeds T / ln T = " << T / std::log(T);
    throw Error(ErrorKind::usage, msg.str());
  }
  const LadderConstants& k = table.constants();
  SubstitutionCheck r;
  const double a = table.phi1(T), b = table.phi1(T + U);
  r.rhs = fn.primitive(b) - fn.primitive(a);
  const double scale = std::max(1.0, std::abs(r.rhs));
  r.quad = integrate_oscillatory(
      [&](double t) {
        const double z = hardy_z(t, cfg);
        const double y = table.phi1(t);
        return fn.f(y) * z * z / smooth_hl_G_prime(y, k);
      },
      T, T + U, config.quad_tol * scale, detail::noisy_product_options(T + U, 2));
  r.lhs = r.quad.value;
  r.residual = std::abs(r.lhs - r.rhs) / scale;
  return r;
}

// int_T^{T+U} prod_{k=0}^n tilde_z2[phi1^k(t)] dt against
// phi1^{n+1}(T+U) - phi1^{n+1}(T).
inline SubstitutionCheck iterated_substitution_residual(const ExperimentConfig& config, const LadderTable& table,
                                                        const ZEvalConfig& cfg) {
  config.validate(table.constants());
  detail::check_depth(config.n);
  const LadderConstants& k = table.constants();
  const int n = config.n;
  const double T = config.T, U = config.U();
  SubstitutionCheck r;
  r.rhs = phi1_iterate(n + 1, T + U, table) - phi1_iterate(n + 1, T, table);
  const double scale = std::max(1.0, std::abs(r.rhs));
  r.quad = integrate_oscillatory(
      [&](double t) {
        std::array<double, detail::kMaxDepth> x;
        detail::iterates(t, n + 1, table, x.data());
        double p = 1.0;
        for (int j = 0; j <= n; ++j) {
          const double z = hardy_z(x[static_cast<std::size_t>(j)], cfg);
          p *= z * z / smooth_hl_G_prime(x[static_cast<std::size_t>(j + 1)], k);
        }
        return p;
      },
      T, T + U, config.quad_tol * scale, detail::noisy_product_options(T + U, n + 2));
  r.lhs = r.quad.value;
  r.residual = std::abs(r.lhs - r.rhs) / scale;
  return r;
}

struct MeanValueReport {
  double tau = 0.0;
  double product_at_tau = 0.0;
  double mean_value = 0.0;
  double relative_residual = 0.0;
  std::vector<double> factors;  // Z^2[phi1^k(tau)], k = 0..n
  double ln_T = 0.0;
  double geometric_mean = 0.0;   // prod_k (Z_k^2)^{1/(n+1)}
  double log_mean = 0.0;         // (1/(n+1)) sum_k ln |Z_k|
  double arithmetic_mean = 0.0;  // (1/(n+1)) sum_k Z_k^2
  double inverse_mean = 0.0;     // (1/(n+1)) sum_k Z_k^{-2}
  double eps_ineq = 0.2;

  double geometric_ratio() const { return geometric_mean / ln_T; }
  double log_mean_ratio() const { return log_mean / (0.5 * std::log(ln_T)); }
  bool arithmetic_bound_holds() const { return (1.0 - eps_ineq) * ln_T <= arithmetic_mean; }
  bool harmonic_bound_holds() const { return 1.0 / ((1.0 + eps_ineq) * ln_T) < inverse_mean; }
};

// Finds tau in [T, T+U] where the product equals its mean over the window:
// a 1024-point scan for a sign change, then bisection until the relative
// mismatch is <= rel_tol or the bracket is a few ulps wide.
inline MeanValueReport mean_value_tau(const ExperimentConfig& config, const LadderTable& table,
                                      const ZEvalConfig& cfg, double eps_ineq = 0.2, double rel_tol = 1e-7) {
  const QuadResult q = product_integral(config, table, cfg);
  const double T = config.T, U = config.U();
  if (!(U > 0.0)) throw Error(ErrorKind::usage, "mean_value_tau: requires U > 0");
  const int n = config.n;
  MeanValueReport rep;
  rep.mean_value = q.value / U;
  rep.eps_ineq = eps_ineq;
  auto g = [&](double t) { return detail::z2_product(t, n, table, cfg) - rep.mean_value; };

  constexpr int kScan = 1024;
  double lo = T, glo = g(T), hi = T, ghi = glo;
  bool found = glo == 0.0;
  for (int i = 1; i < kScan && !found; ++i) {
    const double t = (i + 1 == kScan) ? T + U : T + U * i / (kScan - 1);
    const double gt = g(t);
    if ((glo < 0.0) != (gt < 0.0) || gt == 0.0) {
      hi = t;
      ghi = gt;
      found = true;
    } else {
      lo = t;
      glo = gt;
    }
  }
  if (!found) {
    throw Error(ErrorKind::no_crossing, "mean_value_tau: scan found no crossing of the window mean");
  }
  double tau = (ghi == 0.0) ? hi : lo;
  double gtau = (ghi == 0.0) ? 0.0 : glo;
  while (std::abs(gtau) > rel_tol * rep.mean_value && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
    tau = mid;
    gtau = gm;
  }
  rep.tau = tau;
  rep.product_at_tau = gtau + rep.mean_value;
  rep.relative_residual = std::abs(gtau) / rep.mean_value;

  std::array<double, detail::kMaxDepth> x;
  detail::iterates(tau, n, table, x.data());
  rep.ln_T = std::log(T);
  double log_sum = 0.0, sum = 0.0, inv_sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double z = hardy_z(x[static_cast<std::size_t>(k)], cfg);
    rep.factors.push_back(z * z);
    log_sum += std::log(std::abs(z));
    sum += z * z;
    inv_sum += 1.0 / (z * z);
  }
  rep.log_mean = log_sum / (n + 1);
  rep.geometric_mean = std::exp(2.0 * rep.log_mean);
  rep.arithmetic_mean = sum / (n + 1);
  rep.inverse_mean = inv_sum / (n + 1);
  return rep;
}

}  // namespace ladderlab
