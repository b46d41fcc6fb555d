#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ladderlab/error.hpp"
#include "ladderlab/ladder/constants.hpp"
#include "ladderlab/quad/cumulative_table.hpp"
#include "ladderlab/util/format.hpp"
#include "ladderlab/util/parallel.hpp"
#include "ladderlab/util/roots.hpp"
#include "ladderlab/zeta/hardy_z.hpp"

namespace ladderlab {

// Raised when an iterate leaves [T0, oo); `k` is the offending iterate.
class BelowThresholdError : public Error {
 public:
  BelowThresholdError(const std::string& what, int k) : Error(ErrorKind::below_threshold, what), k_(k) {}
  int k() const noexcept { return k_; }

 private:
  int k_;
};

namespace detail {

// Solves G(Y) = I for Y in [lo, hi] (G increasing there).
inline double solve_G(double I, const LadderConstants& k, double lo, double hi, double guess) {
  auto fdf = [&](double y, double& g, double& dg) {
    g = smooth_hl_G(y, k) - I;
    dg = smooth_hl_G_prime(y, k);
  };
  const RootResult r = newton_bisect(fdf, lo, hi, guess, 100);
  const double residual = std::abs(smooth_hl_G(r.x, k) - I);
  if (!r.converged || residual > 1e-9 * std::max(1.0, std::abs(I))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "phi1: root of G(Y) = " << I << " not converged after " << r.iterations
        << " iterations; bracket [" << r.lo << ", " << r.hi << "]";
    throw Error(ErrorKind::not_converged, msg.str());
  }
  return r.x;
}

inline double phi1_from_integral(double t, double I, const LadderConstants& k) {
  // G has its minimum at 2 pi e^{-1-c} and increases beyond it.
  const double lo = std::max(1.0, 2.0 * std::numbers::pi * std::exp(-1.0 - k.c));
  if (!(smooth_hl_G(t, k) > I)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "phi1: no root of G(Y) = I(t) below t = " << t << " (G(t) <= I(t))";
    throw Error(ErrorKind::not_converged, msg.str());
  }
  const double guess = t - (1.0 - k.c) * t / std::log(t);
  return solve_G(I, k, lo, t, guess);
}

}  // namespace detail

// phi1(t) is the root Y of G(Y) = I(t).
inline double phi1(double t, const CumulativeZ2Table& table, const LadderConstants& k) {
  if (!(t >= k.T0)) {
    std::ostringstream msg;
    msg << "phi1: t = " << t << " is below T0 = " << k.T0;
    throw BelowThresholdError(msg.str(), 0);
  }
  return detail::phi1_from_integral(t, table.at(t), k);
}

// phi1 sampled on the cumulative table's checkpoints in [T0, t_max] with a
// monotone piecewise-cubic interpolant. Queries whose cell increment (an upper
// bound on the interpolation error, phi1 being increasing) exceeds
// `refine_threshold` are answered by the solver, bracketed by the cell.
class LadderTable {
 public:
  static constexpr const char* kMagic = "LADDERLAB-PHI1";

  LadderTable() = default;

  static LadderTable build(std::shared_ptr<const CumulativeZ2Table> cum, const LadderConstants& k,
                           double refine_threshold = 1e-6) {
    k.validate();
    if (!cum || cum->t_max() < k.T0) {
      throw Error(ErrorKind::out_of_table, "ladder table: cumulative table does not reach T0");
    }
    LadderTable lt;
    lt.cum_ = std::move(cum);
    lt.k_ = k;
    lt.refine_ = refine_threshold;
    const auto grid = lt.cum_->t_grid();
    const auto vals = lt.cum_->values();
    const auto first = static_cast<std::size_t>(std::upper_bound(grid.begin(), grid.end(), k.T0) - grid.begin());
    lt.t_.push_back(k.T0);
    lt.t_.insert(lt.t_.end(), grid.begin() + static_cast<std::ptrdiff_t>(first), grid.end());
    lt.phi_.resize(lt.t_.size());
    const double I0 = (first > 0 && grid[first - 1] == k.T0) ? vals[first - 1] : lt.cum_->at(k.T0);
    parallel_for(
        lt.t_.size(),
        [&](std::size_t i) {
          const double I = (i == 0) ? I0 : vals[first + i - 1];
          lt.phi_[i] = detail::phi1_from_integral(lt.t_[i], I, k);
        },
        1024);
    lt.finish();
    return lt;
  }

  const CumulativeZ2Table& cumulative() const { return *cum_; }
  std::shared_ptr<const CumulativeZ2Table> cumulative_ptr() const { return cum_; }
  const LadderConstants& constants() const { return k_; }
  const ZEvalConfig& z_config() const { return cum_->z_config(); }
  double T0() const { return k_.T0; }
  double t_max() const { return t_.back(); }
  double refine_threshold() const { return refine_; }
  std::span<const double> t_grid() const { return t_; }
  std::span<const double> phi1_values() const { return phi_; }
  std::span<const double> slopes() const { return slope_; }

  double interpolate(double t) const {
    const std::size_t i = cell(t);
    if (i + 1 == t_.size()) return phi_[i];
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * phi_[i] + (s3 - 2 * s2 + s) * h * slope_[i] +
           (-2 * s3 + 3 * s2) * phi_[i + 1] + (s3 - s2) * h * slope_[i + 1];
  }

  double interpolation_error_bound(double t) const {
    const std::size_t i = cell(t);
    if (t_[i] == t || i + 1 == t_.size()) return 0.0;
    return phi_[i + 1] - phi_[i];
  }

  double phi1(double t) const {
    const std::size_t i = cell(t);
    if (t_[i] == t || i + 1 == t_.size()) return phi_[i];
    const double guess = interpolate(t);
    if (phi_[i + 1] - phi_[i] <= refine_) return guess;
    const double pad = 1e-9 * (1.0 + phi_[i + 1] - phi_[i]);
    return detail::solve_G(cum_->at(t), k_, phi_[i] - pad, phi_[i + 1] + pad, guess);
  }

  void save(std::ostream& os) const {
    os << kMagic << " v1 T0=" << format_double(k_.T0) << " t_max=" << format_double(t_max())
       << " c=" << format_double(k_.c) << " c0=" << format_double(k_.c0) << "\n";
    os << "t,phi1\n";
    for (std::size_t i = 0; i < t_.size(); ++i) os << format_double(t_[i]) << ',' << format_double(phi_[i]) << '\n';
  }

  void save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::io, "cannot write " + path);
    save(os);
    if (!os) throw Error(ErrorKind::io, "write failed: " + path);
  }

  // Reads a cache written by save(). The header constants must match `k`
  // and the rows must describe an increasing ladder below the identity.
  static LadderTable load(std::istream& is, std::shared_ptr<const CumulativeZ2Table> cum,
                          const LadderConstants& k, double refine_threshold = 1e-6) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::io, "ladder table: empty input");
    const auto fields = parse_header(line, kMagic);
    if (header_value(fields, "T0") != k.T0 || header_value(fields, "c") != k.c ||
        header_value(fields, "c0") != k.c0) {
      throw Error(ErrorKind::io, "ladder table: header constants differ from the requested ones");
    }
    LadderTable lt;
    lt.cum_ = std::move(cum);
    lt.k_ = k;
    lt.refine_ = refine_threshold;
    while (std::getline(is, line)) {
      if (line.empty() || line == "t,phi1") continue;
      const auto cols = split_csv(line);
      if (cols.size() != 2) throw Error(ErrorKind::io, "ladder table: malformed row '" + line + "'");
      lt.t_.push_back(parse_double(cols[0]));
      lt.phi_.push_back(parse_double(cols[1]));
    }
    if (lt.t_.empty() || lt.t_.front() != k.T0) throw Error(ErrorKind::io, "ladder table: must start at T0");
    if (lt.t_max() != header_value(fields, "t_max")) throw Error(ErrorKind::io, "ladder table: header t_max mismatch");
    if (!lt.cum_ || lt.cum_->t_max() < lt.t_max()) {
      throw Error(ErrorKind::io, "ladder table: cumulative table shorter than the ladder");
    }
    for (std::size_t i = 0; i < lt.t_.size(); ++i) {
      if (!(lt.phi_[i] < lt.t_[i])) throw Error(ErrorKind::io, "ladder table: phi1(t) >= t in row " + std::to_string(i));
      if (i > 0 && !(lt.t_[i] > lt.t_[i - 1])) throw Error(ErrorKind::io, "ladder table: t not increasing");
      if (i > 0 && !(lt.phi_[i] > lt.phi_[i - 1])) throw Error(ErrorKind::io, "ladder table: phi1 not increasing");
    }
    lt.finish();
    return lt;
  }

  static LadderTable load(const std::string& path, std::shared_ptr<const CumulativeZ2Table> cum,
                          const LadderConstants& k, double refine_threshold = 1e-6) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::io, "cannot read " + path);
    return load(is, std::move(cum), k, refine_threshold);
  }

 private:
  std::size_t cell(double t) const {
    if (!(t >= t_.front())) {
      std::ostringstream msg;
      msg << "phi1: t = " << t << " is below T0 = " << k_.T0;
      throw BelowThresholdError(msg.str(), 0);
    }
    if (t > t_.back()) {
      std::ostringstream msg;
      msg << "phi1: t = " << t << " beyond ladder table end " << t_.back();
      throw Error(ErrorKind::out_of_table, msg.str());
    }
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    return static_cast<std::size_t>(it - t_.begin()) - 1;
  }

  // Node slopes by the Fritsch-Butland weighted harmonic mean, which keeps
  // each cubic piece monotone.
  void finish() {
    const std::size_t m = t_.size();
    slope_.assign(m, 0.0);
    if (m < 2) return;
    std::vector<double> h(m - 1), d(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      h[i] = t_[i + 1] - t_[i];
      d[i] = (phi_[i + 1] - phi_[i]) / h[i];
    }
    slope_[0] = d[0];
    slope_[m - 1] = d[m - 2];
    for (std::size_t i = 1; i + 1 < m; ++i) {
      if (d[i - 1] * d[i] <= 0.0) continue;
      const double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }

  std::shared_ptr<const CumulativeZ2Table> cum_;
  LadderConstants k_{};
  double refine_ = 1e-6;
  std::vector<double> t_, phi_, slope_;
};

// k-fold composition of phi1; k = 0 returns t unchanged.
inline double phi1_iterate(int k, double t, const LadderTable& table) {
  if (k < 0) throw Error(ErrorKind::domain, "phi1_iterate: k must be >= 0");
  double x = t;
  for (int j = 1; j <= k; ++j) {
    if (!(x >= table.T0())) {
      std::ostringstream msg;
      msg << "phi1_iterate: iterate k=" << (j - 1) << " = " << x << " is below T0 = " << table.T0();
      throw BelowThresholdError(msg.str(), j - 1);
    }
    x = table.phi1(x);
  }
  if (k > 0 && !(x >= table.T0())) {
    std::ostringstream msg;
    msg << "phi1_iterate: iterate k=" << k << " = " << x << " is below T0 = " << table.T0();
    throw BelowThresholdError(msg.str(), k);
  }
  return x;
}

// Z(t)^2 / G'(phi1(t)), the derivative of phi1.
inline double tilde_z2(double t, const LadderTable& table, const ZEvalConfig& cfg, const LadderConstants& k) {
  const double z = hardy_z(t, cfg);
  return z * z / smooth_hl_G_prime(table.phi1(t), k);
}

inline double tilde_z2(double t, const LadderTable& table) {
  return tilde_z2(t, table, table.z_config(), table.constants());
}

}  // namespace ladderlab
