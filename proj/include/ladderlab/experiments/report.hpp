#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ladderlab/error.hpp"
#include "ladderlab/util/format.hpp"

namespace ladderlab {

// One row of a verification report. Identity checks carry a residual and
// an absolute threshold; ratio checks carry ratio = lhs / rhs and pass when
// |ratio - 1| <= tolerance.
struct CheckRecord {
  std::string check_name;
  int n = 0;
  double T = 0.0;
  double U = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckRecord residual_record(std::string name, int n, double T, double U, double lhs, double rhs,
                                   double residual, double tolerance) {
  CheckRecord r{std::move(name), n, T, U, lhs, rhs};
  if (rhs != 0.0) r.ratio = lhs / rhs;
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(lhs) && std::isfinite(rhs) && residual <= tolerance;
  return r;
}

// Accepted interval [lo, hi] for a ratio; need not be centred on 1.
struct RatioBand {
  double lo = 1.0;
  double hi = 1.0;
  static RatioBand symmetric(double half_width) { return {1.0 - half_width, 1.0 + half_width}; }
};

// The recorded tolerance is the distance from 1 to the band edge on the side
// the ratio falls, so pass == (residual <= tolerance).
inline CheckRecord ratio_record(std::string name, int n, double T, double U, double lhs, double rhs,
                                RatioBand band) {
  CheckRecord r{std::move(name), n, T, U, lhs, rhs};
  r.ratio = (rhs != 0.0) ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
  r.residual = std::abs(r.ratio - 1.0);
  r.tolerance = (r.ratio < 1.0) ? 1.0 - band.lo : band.hi - 1.0;
  r.pass = std::isfinite(r.ratio) && r.ratio >= band.lo && r.ratio <= band.hi;
  return r;
}

inline CheckRecord ratio_record(std::string name, int n, double T, double U, double lhs, double rhs,
                                double half_width) {
  CheckRecord r = ratio_record(std::move(name), n, T, U, lhs, rhs, RatioBand::symmetric(half_width));
  r.tolerance = half_width;
  r.pass = std::isfinite(r.ratio) && r.residual <= half_width;
  return r;
}

struct VerificationReport {
  std::vector<CheckRecord> records;
  nlohmann::ordered_json provenance = nlohmann::ordered_json::object();

  bool all_pass() const {
    for (const auto& r : records) {
      if (!r.pass) return false;
    }
    return true;
  }

  void append(const VerificationReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }

  static constexpr const char* kCsvHeader = "check_name,n,T,U,lhs,rhs,ratio,residual,tolerance,pass";

  void write_csv(std::ostream& os) const {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
      os << r.check_name << ',' << r.n << ',' << format_double(r.T) << ',' << format_double(r.U) << ','
         << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.ratio) << ','
         << format_double(r.residual) << ',' << format_double(r.tolerance) << ',' << (r.pass ? "true" : "false")
         << '\n';
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["provenance"] = provenance;
    auto num = [](double x) -> nlohmann::ordered_json {
      if (std::isfinite(x)) return x;
      return nullptr;
    };
    auto& rows = j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      rows.push_back({{"check_name", r.check_name},
                      {"n", r.n},
                      {"T", r.T},
                      {"U", r.U},
                      {"lhs", num(r.lhs)},
                      {"rhs", num(r.rhs)},
                      {"ratio", num(r.ratio)},
                      {"residual", num(r.residual)},
                      {"tolerance", num(r.tolerance)},
                      {"pass", r.pass}});
    }
    j["all_pass"] = all_pass();
    return j;
  }

  void write_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::io, "cannot write " + path);
    write_csv(os);
  }

  void write_json(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::io, "cannot write " + path);
    os << to_json().dump(2) << '\n';
  }
};

// Acceptance bands for ratio checks, keyed by check family and n; the entry
// with the largest T_min <= T applies. Entries give either "lo" and "hi" or a
// "half_width" around 1.
class PassBands {
 public:
  struct Band {
    int n = -1;  // -1 matches any n
    double T_min = 0.0;
    RatioBand range;
    std::string provenance;
  };

  static PassBands from_json(const nlohmann::json& j) {
    PassBands b;
    for (const auto& [family, entries] : j.at("bands").items()) {
      for (const auto& e : entries) {
        Band band;
        band.n = e.value("n", -1);
        band.T_min = e.value("T_min", 0.0);
        if (e.contains("half_width")) {
          const double hw = e.at("half_width").get<double>();
          if (!(hw > 0.0)) throw Error(ErrorKind::io, "pass bands: half_width must be > 0");
          band.range = RatioBand::symmetric(hw);
        } else {
          band.range = {e.at("lo").get<double>(), e.at("hi").get<double>()};
        }
        if (!(band.range.lo <= 1.0 && band.range.hi >= 1.0 && band.range.lo >= 0.0)) {
          throw Error(ErrorKind::io, "pass bands: '" + family + "' band must satisfy 0 <= lo <= 1 <= hi");
        }
        band.provenance = e.value("provenance", std::string{});
        b.bands_[family].push_back(std::move(band));
      }
    }
    b.source_ = j.value("source", std::string{});
    return b;
  }

  static PassBands load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::io, "cannot read pass bands " + path);
    try {
      return from_json(nlohmann::json::parse(is));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::io, "pass bands " + path + ": " + e.what());
    }
  }

  std::optional<Band> find(const std::string& family, int n, double T) const {
    const auto it = bands_.find(family);
    if (it == bands_.end()) return std::nullopt;
    std::optional<Band> best;
    for (const auto& b : it->second) {
      if (b.n != -1 && b.n != n) continue;
      if (b.T_min > T) continue;
      if (!best || b.T_min > best->T_min || (b.T_min == best->T_min && b.n != -1)) best = b;
    }
    return best;
  }

  RatioBand range(const std::string& family, int n, double T) const {
    const auto b = find(family, n, T);
    if (!b) throw Error(ErrorKind::io, "pass bands: no band for '" + family + "' n=" + std::to_string(n));
    return b->range;
  }

  const std::string& source() const { return source_; }

 private:
  std::map<std::string, std::vector<Band>> bands_;
  std::string source_;
};

}  // namespace ladderlab
