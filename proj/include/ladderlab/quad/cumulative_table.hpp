#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ladderlab/error.hpp"
#include "ladderlab/quad/integrate.hpp"
#include "ladderlab/util/format.hpp"
#include "ladderlab/util/parallel.hpp"
#include "ladderlab/zeta/hardy_z.hpp"

namespace ladderlab {

inline auto z_squared(const ZEvalConfig& cfg) {
  return [cfg](double t) {
    const double z = hardy_z(t, cfg);
    return z * z;
  };
}

// With |dZ| <= e, |d(Z^2)| <= 2|Z| e + e^2 <= e Z^2 + e + e^2.
inline double z_squared_noise(double t, const ZEvalConfig& cfg) {
  const double e = hardy_z_error_estimate(t, cfg);
  return e + e * e;
}

// I(t) = int_0^t Z(u)^2 du on the checkpoints 0, step, 2 step, ..., t_max
// (the last cell may be shorter). Cell errors are the quadrature estimates
// plus the rounding of the running sum.
class CumulativeZ2Table {
 public:
  static constexpr const char* kMagic = "LADDERLAB-CUMZ2";

  CumulativeZ2Table() = default;

  static CumulativeZ2Table build(double t_max, double checkpoint_step, double tol_per_unit,
                                 const ZEvalConfig& cfg = {}) {
    if (!(t_max >= 0.0)) throw Error(ErrorKind::domain, "cumulative table: t_max must be >= 0");
    if (!(checkpoint_step > 0.0)) throw Error(ErrorKind::domain, "cumulative table: step must be > 0");
    if (!(tol_per_unit > 0.0)) throw Error(ErrorKind::domain, "cumulative table: tol must be > 0");
    cfg.validate();
    CumulativeZ2Table table;
    table.step_ = checkpoint_step;
    table.tol_per_unit_ = tol_per_unit;
    table.cfg_ = cfg;
    table.t_ = {0.0};
    table.values_ = {0.0};
    table.errors_ = {0.0};
    table.extend(t_max);
    return table;
  }

  // Grows the table to new_t_max, reusing every full cell already present.
  void extend(double new_t_max) {
    if (new_t_max <= t_max()) return;
    if (t_.size() > 1 && !on_lattice(t_.size() - 1)) {
      t_.pop_back();
      values_.pop_back();
      errors_.pop_back();
    }
    const std::size_t first = t_.size() - 1;  // index of the last lattice point
    const auto last_full = static_cast<std::size_t>(std::floor(new_t_max / step_ * (1.0 + 1e-15)));
    std::vector<double> ends;
    for (std::size_t j = first + 1; j <= last_full; ++j) ends.push_back(step_ * static_cast<double>(j));
    if (ends.empty() || ends.back() < new_t_max) {
      if (!ends.empty() && new_t_max - ends.back() < 1e-12 * step_) {
        ends.back() = new_t_max;
      } else {
        ends.push_back(new_t_max);
      }
    }
    std::vector<QuadResult> cells(ends.size());
    std::vector<std::string> failures(ends.size());
    const auto integrand = z_squared(cfg_);
    const double start = t_.back();
    QuadOptions opts;
    opts.width_cap = step_;
    opts.parallel = false;
    opts.throw_on_tolerance = false;
    parallel_for(
        ends.size(),
        [&](std::size_t i) {
          const double a = (i == 0) ? start : ends[i - 1];
          QuadOptions cell_opts = opts;
          cell_opts.rel_noise = cell_opts.abs_noise = z_squared_noise(a, cfg_);
          cells[i] = integrate_oscillatory(integrand, a, ends[i], tol_per_unit_ * (ends[i] - a), cell_opts);
        },
        64);
    // Where Z^2 peaks the estimate can sit on the integrand noise, which
    // bisection cannot reduce; that part is allowed on top of the tolerance.
    for (std::size_t i = 0; i < ends.size(); ++i) {
      const double a = (i == 0) ? start : ends[i - 1];
      if (cells[i].abs_error_estimate > tol_per_unit_ * (ends[i] - a) + cells[i].noise_floor) {
        std::ostringstream msg;
        msg << "cumulative table: cell " << (first + i) << " [" << a << ", " << ends[i]
            << "] error estimate " << cells[i].abs_error_estimate << " exceeds tolerance";
        throw QuadratureError(msg.str(), cells[i]);
      }
    }
    for (std::size_t i = 0; i < ends.size(); ++i) {
      const double next = values_.back() + cells[i].value;
      const double rounding = 0.5 * std::abs(std::nextafter(next, 2.0 * next + 1.0) - next);
      t_.push_back(ends[i]);
      values_.push_back(next);
      errors_.push_back(cells[i].abs_error_estimate + rounding);
      evals_ += cells[i].evals;
    }
  }

  double t_max() const { return t_.back(); }
  double step() const { return step_; }
  double tol_per_unit() const { return tol_per_unit_; }
  const ZEvalConfig& z_config() const { return cfg_; }
  std::span<const double> t_grid() const { return t_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> cell_errors() const { return errors_; }
  std::int64_t evals() const { return evals_; }
  std::size_t size() const { return t_.size(); }

  double error_bound() const {
    double s = 0.0;
    for (double e : errors_) s += e;
    return s;
  }

  // Cumulative error bound at checkpoint j.
  double error_bound_at(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i <= j && i < errors_.size(); ++i) s += errors_[i];
    return s;
  }

  // I(t) for any 0 <= t <= t_max: nearest checkpoint plus a short Gauss-Legendre
  // integral (at most half a cell) to t.
  double at(double t) const {
    if (!(t >= 0.0) || t > t_max()) {
      std::ostringstream msg;
      msg << "cumulative table: t = " << t << " outside [0, " << t_max() << "]";
      throw Error(ErrorKind::out_of_table, msg.str());
    }
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t j = static_cast<std::size_t>(it - t_.begin()) - 1;
    if (t_[j] == t) return values_[j];
    if (j + 1 < t_.size() && (t_[j + 1] - t) < (t - t_[j])) {
      return values_[j + 1] - partial(t, t_[j + 1]);
    }
    return values_[j] + partial(t_[j], t);
  }

  void save(std::ostream& os) const {
    os << kMagic << " v1 t_max=" << format_double(t_max()) << " step=" << format_double(step_)
       << " tol=" << format_double(tol_per_unit_) << "\n";
    os << "t,I,err\n";
    for (std::size_t i = 0; i < t_.size(); ++i) {
      os << format_double(t_[i]) << ',' << format_double(values_[i]) << ',' << format_double(errors_[i])
         << '\n';
    }
  }

  void save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::io, "cannot write " + path);
    save(os);
    if (!os) throw Error(ErrorKind::io, "write failed: " + path);
  }

  static CumulativeZ2Table load(std::istream& is, const ZEvalConfig& cfg = {}) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::io, "cumulative table: empty input");
    const auto fields = parse_header(line, kMagic);
    CumulativeZ2Table table;
    table.cfg_ = cfg;
    table.step_ = header_value(fields, "step");
    table.tol_per_unit_ = header_value(fields, "tol");
    const double t_max = header_value(fields, "t_max");
    while (std::getline(is, line)) {
      if (line.empty() || line == "t,I,err") continue;
      const auto cols = split_csv(line);
      if (cols.size() != 3) throw Error(ErrorKind::io, "cumulative table: malformed row '" + line + "'");
      table.t_.push_back(parse_double(cols[0]));
      table.values_.push_back(parse_double(cols[1]));
      table.errors_.push_back(parse_double(cols[2]));
    }
    table.validate();
    if (table.t_max() != t_max) throw Error(ErrorKind::io, "cumulative table: header t_max mismatch");
    return table;
  }

  static CumulativeZ2Table load(const std::string& path, const ZEvalConfig& cfg = {}) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::io, "cannot read " + path);
    return load(is, cfg);
  }

  void validate() const {
    if (t_.empty() || t_[0] != 0.0 || values_[0] != 0.0) {
      throw Error(ErrorKind::io, "cumulative table: must start at t = 0 with I = 0");
    }
    for (std::size_t i = 1; i < t_.size(); ++i) {
      if (!(t_[i] > t_[i - 1])) throw Error(ErrorKind::io, "cumulative table: t grid not increasing");
      if (!(values_[i] >= values_[i - 1])) throw Error(ErrorKind::io, "cumulative table: I decreasing");
      if (!(errors_[i] >= 0.0)) throw Error(ErrorKind::io, "cumulative table: negative error bound");
    }
  }

 private:
  bool on_lattice(std::size_t j) const {
    const double k = std::round(t_[j] / step_);
    return t_[j] == step_ * k;
  }

  double partial(double a, double b) const {
    const auto& g16 = GaussLegendre<16>::get();
    const double width = oscillation_panel_width(b, step_);
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / width)));
    const double h = (b - a) / static_cast<double>(panels);
    const auto f = z_squared(cfg_);
    double s = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
      const double lo = a + h * static_cast<double>(i);
      const double hi = (i + 1 == panels) ? b : lo + h;
      s += g16.apply(f, lo, hi);
    }
    return s;
  }

  double step_ = 1.0;
  double tol_per_unit_ = 1e-10;
  ZEvalConfig cfg_{};
  std::vector<double> t_, values_, errors_;
  std::int64_t evals_ = 0;
};

}  // namespace ladderlab
