// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 0
// only when every criterion passes.
//
//   acceptance --work-dir DIR --cli PATH/TO/ladderlab

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ladderlab/experiments/suite.hpp"
#include "mp_oracle.hpp"
#include "zeros.hpp"

using namespace ladderlab;
namespace fs = std::filesystem;

namespace {

// Thresholds.
constexpr double kZAbsTol = 1e-8;
constexpr double kZSeconds = 300.0;
constexpr double kLemmaTol = 1e-6;
constexpr double kIteratedTol = 1e-5;
constexpr double kMeanValueTol = 1e-6;
constexpr double kLengthLo = 0.95, kLengthHi = 1.05;
constexpr double kEpsIneq = 0.2;
constexpr double kTableSeconds = 600.0;
constexpr double kAllSeconds = 120.0;
constexpr double kFiniteDiffTol = 1e-4;

// Frozen bands, matching data/pass_bands.json. Recession, theorem and log-mean
// apply at T = 1e6; the gap band applies to every tested configuration.
struct Band {
  double lo, hi;
  bool holds(double r) const { return r >= lo && r <= hi; }
};
std::ostream& operator<<(std::ostream& os, const Band& b) { return os << "[" << b.lo << ", " << b.hi << "]"; }

constexpr Band kRecessionBand{0.95, 1.05};
constexpr Band kTheoremBand[3] = {{0.85, 1.05}, {0.8, 1.1}, {0.7, 1.2}};  // n = 0, 1, 2
constexpr Band kGapBand{0.8, 1.1};
constexpr Band kLogMeanBand{0.9, 1.05};

constexpr double kTableEnd = 1e6;
constexpr double kExperimentEnd = 1e6 + 1300.0;  // T + 5U + 1 at T = 1e6

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Line {
  int id;
  std::string title;
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

void report(Line& l) {
  std::printf("criterion %d %-5s %s:%s\n", l.id, l.pass ? "PASS" : "FAIL", l.title.c_str(), l.detail.str().c_str());
  std::fflush(stdout);
}

int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

ExperimentConfig config(double T, int n) {
  ExperimentConfig c;
  c.T = T;
  c.n = n;
  c.epsilon = 1.0 / 30.0;
  return c;
}

// 1000 random heights against the 128-bit Euler-Maclaurin oracle.
void criterion_z(Line& l) {
  const auto t0 = std::chrono::steady_clock::now();
  ladderlab_test::MpOracle oracle;
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> u(10.0, 1e6);
  double worst = 0.0, worst_t = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    const double d = std::abs(hardy_z(t) - oracle.z(t));
    if (!(d <= worst)) {
      worst = d;
      worst_t = t;
    }
  }
  const double secs = seconds_since(t0);
  l.detail << " max |Z - oracle| = " << worst << " at t = " << worst_t << " (limit " << kZAbsTol << "), " << secs
           << " s (limit " << kZSeconds << " s)";
  l.require(worst <= kZAbsTol, "accuracy");
  l.require(secs <= kZSeconds, "runtime");
}

void criterion_lemma(Line& l, const LadderTable& lt) {
  const ExperimentConfig c = config(1e5, 0);
  for (const TestFunction& fn : standard_test_functions()) {
    const SubstitutionCheck s = lemma_substitution_residual(fn, c, lt, lt.z_config());
    l.detail << " " << fn.name << " " << s.residual;
    l.require(s.residual <= kLemmaTol, fn.name);
  }
  l.detail << " (limit " << kLemmaTol << ")";
}

void criterion_iterated(Line& l, const LadderTable& lt) {
  for (int n = 0; n <= 3; ++n) {
    const SubstitutionCheck s = iterated_substitution_residual(config(1e5, n), lt, lt.z_config());
    l.detail << " n=" << n << " " << s.residual;
    l.require(s.residual <= kIteratedTol, "n=" + std::to_string(n));
  }
  l.detail << " (limit " << kIteratedTol << ")";
}

void criterion_recession(Line& l, const LadderTable& lt) {
  const double c = lt.constants().c;
  double prev = INFINITY;
  double last = 0.0;
  for (double t : {1e4, 1e5, 1e6}) {
    const double r = (t - lt.phi1(t)) * std::log(t) / ((1.0 - c) * t);
    l.detail << " t=" << t << " " << r;
    l.require(std::abs(r - 1.0) < prev, "not closer to 1 at t=" + std::to_string(t));
    prev = std::abs(r - 1.0);
    last = r;
  }
  l.detail << " (band at 1e6: " << kRecessionBand << ")";
  l.require(kRecessionBand.holds(last), "band at 1e6");
}

struct WindowMeans {
  double mean[3][3];  // [n][T index]
};

WindowMeans window_means(const LadderTable& lt) {
  WindowMeans w{};
  const double Ts[3] = {1e4, 1e5, 1e6};
  for (int n = 0; n <= 2; ++n) {
    for (int i = 0; i < 3; ++i) {
      const std::vector<double> r = window_ratios(config(Ts[i], n), lt, lt.z_config(), 5);
      double s = 0.0;
      for (double v : r) s += v;
      w.mean[n][i] = s / 5.0;
    }
  }
  return w;
}

void criterion_theorem(Line& l, const WindowMeans& w) {
  for (int n = 0; n <= 2; ++n) {
    l.detail << " n=" << n << ":";
    for (int i = 0; i < 3; ++i) l.detail << " " << w.mean[n][i];
    l.require(std::abs(w.mean[n][1] - 1.0) < std::abs(w.mean[n][0] - 1.0) &&
                  std::abs(w.mean[n][2] - 1.0) < std::abs(w.mean[n][1] - 1.0),
              "|mean - 1| not decreasing in T for n=" + std::to_string(n));
    l.require(kTheoremBand[n].holds(w.mean[n][2]), "band at 1e6 for n=" + std::to_string(n));
  }
  l.detail << " (bands at 1e6: " << kTheoremBand[0] << ", " << kTheoremBand[1] << ", " << kTheoremBand[2] << ")";
}

void criterion_chain(Line& l, const LadderTable& lt) {
  double worst_len = 1.0, worst_gap = 1.0;
  std::string worst_len_at;
  for (int n = 0; n <= 3; ++n) {
    std::vector<double> gaps_1e5;
    for (double T : {1e4, 1e5, 1e6}) {
      const IterationChain ch = build_chain(config(T, n), lt);
      const std::string tag = "T=" + std::to_string(static_cast<long>(T)) + " n=" + std::to_string(n);
      for (const Segment& s : ch.segments) l.require(s.lo >= lt.T0(), "iterate below T0 at " + tag);
      for (std::size_t k = 0; k < ch.length_ratios.size(); ++k) {
        const double r = ch.length_ratios[k];
        if (std::abs(r - 1.0) > std::abs(worst_len - 1.0)) {
          worst_len = r;
          worst_len_at = tag + " k=" + std::to_string(k);
        }
        l.require(r >= kLengthLo && r <= kLengthHi, "length ratio " + std::to_string(r) + " at " + tag + " k=" + std::to_string(k));
      }
      for (std::size_t k = 0; k < ch.gap_ratios.size(); ++k) {
        const double g = ch.gap_ratios[k];
        if (std::abs(g - 1.0) > std::abs(worst_gap - 1.0)) worst_gap = g;
        l.require(kGapBand.holds(g), "gap ratio at " + tag + " k=" + std::to_string(k + 1));
      }
      if (T == 1e5) gaps_1e5 = ch.gaps;
      if (T == 1e6) {
        for (std::size_t k = 0; k < ch.gaps.size(); ++k) {
          l.require(ch.gaps[k] > gaps_1e5[k], "gap does not grow from 1e5 to 1e6 at n=" + std::to_string(n));
        }
      }
    }
  }
  l.detail << " worst length ratio " << worst_len << " (" << worst_len_at << "; allowed [" << kLengthLo << ", "
           << kLengthHi << "]), worst gap ratio " << worst_gap << " (band " << kGapBand << ")";
}

void criterion_mean_value(Line& l, const LadderTable& lt) {
  for (double T : {1e4, 1e5, 1e6}) {
    for (int n = 0; n <= 2; ++n) {
      const MeanValueReport mv = mean_value_tau(config(T, n), lt, lt.z_config(), kEpsIneq);
      const std::string tag = "T=" + std::to_string(static_cast<long>(T)) + " n=" + std::to_string(n);
      l.require(mv.relative_residual <= kMeanValueTol, "tau residual at " + tag);
      l.require(mv.arithmetic_bound_holds(), "arithmetic-mean bound at " + tag);
      l.require(mv.harmonic_bound_holds(), "harmonic-mean bound at " + tag);
      if (T == 1e6) {
        l.detail << " n=" << n << " log-mean ratio " << mv.log_mean_ratio() << " tau residual "
                 << mv.relative_residual;
        l.require(kLogMeanBand.holds(mv.log_mean_ratio()), "log-mean band at " + tag);
      }
    }
  }
  l.detail << " (band " << kLogMeanBand << ", tau limit " << kMeanValueTol << ")";
}

void criterion_timing(Line& l, double table_secs, int table_code, double all_secs, int all_code) {
  l.detail << " build-table to 1e6 " << table_secs << " s (exit " << table_code << ", limit " << kTableSeconds
           << " s); all at T=1e5 " << all_secs << " s (exit " << all_code << ", limit " << kAllSeconds << " s)";
  l.require(table_code == 0, "build-table exit status");
  l.require(table_secs <= kTableSeconds, "build-table time");
  l.require(all_code == 0 || all_code == 1, "all did not complete");
  l.require(all_secs <= kAllSeconds, "all time");
}

void criterion_properties(Line& l, const LadderTable& lt) {
  const CumulativeZ2Table& cum = lt.cumulative();
  const LadderConstants& k = lt.constants();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(k.T0, kTableEnd);

  double worst_residual = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double t = u(rng);
    const double I = cum.at(t);
    worst_residual = std::max(worst_residual, std::abs(smooth_hl_G(lt.phi1(t), k) - I) / I);
  }
  l.detail << " defining residual " << worst_residual;
  l.require(worst_residual <= 1e-9, "G(phi1(t)) = I(t)");

  const auto iv = cum.values();
  bool mono = true;
  for (std::size_t i = 1; i < iv.size(); ++i) mono = mono && iv[i] >= iv[i - 1];
  const auto tg = lt.t_grid();
  const auto pv = lt.phi1_values();
  for (std::size_t i = 1; i < pv.size(); ++i) mono = mono && pv[i] > pv[i - 1] && pv[i] < tg[i];
  l.detail << ", monotone " << (mono ? "yes" : "no");
  l.require(mono, "monotonicity");

  double worst_fd = 0.0;
  for (int checked = 0; checked < 300;) {
    const double t = u(rng);
    if (!ladderlab_test::away_from_zeros(t)) continue;
    const double h = 1e-3;
    const double fd = (lt.phi1(t + h) - lt.phi1(t - h)) / (2.0 * h);
    const double exact = tilde_z2(t, lt);
    worst_fd = std::max(worst_fd, std::abs(fd - exact) / exact);
    ++checked;
  }
  l.detail << ", finite difference " << worst_fd;
  l.require(worst_fd <= kFiniteDiffTol, "derivative vs finite difference");

  double worst_add = 0.0;
  for (int i = 0; i < 20; ++i) {
    double a = u(rng);
    const double b = a + 50.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const QuadResult q = integrate_oscillatory(z_squared(cum.z_config()), a, b, 1e-8);
    const double miss = std::abs((cum.at(b) - cum.at(a)) - q.value) - (cum.error_bound() + q.abs_error_estimate);
    worst_add = std::max(worst_add, std::abs((cum.at(b) - cum.at(a)) - q.value));
    l.require(miss <= 0.0, "additivity");
  }
  l.detail << ", additivity " << worst_add << " (table bound " << cum.error_bound() << ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance run"};
  std::string work_dir, cli;
  app.add_option("--work-dir", work_dir)->required();
  app.add_option("--cli", cli)->required();
  CLI11_PARSE(app, argc, argv);

  const fs::path work(work_dir);
  fs::remove_all(work);
  fs::create_directories(work);

  Line lines[9] = {{1, "Z accuracy"},          {2, "substitution identity"}, {3, "iterated substitution"},
                   {4, "recession"},           {5, "product ratio"},         {6, "chain geometry"},
                   {7, "mean-value point"},    {8, "performance"},           {9, "properties"}};

  try {
    // Timed command-line runs; their caches feed everything else.
    auto t0 = std::chrono::steady_clock::now();
    const int all_code = run_cli(cli, "all --T 1e5 --n 1 --cache-dir \"" + (work / "cache_1e5").string() +
                                          "\" --out-dir \"" + (work / "out_1e5").string() + "\"",
                                 work / "all.log");
    const double all_secs = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const fs::path cache = work / "cache_1e6";
    const int table_code = run_cli(cli, "build-table --t-max 1e6 --cache-dir \"" + cache.string() + "\" --out-dir \"" +
                                            (work / "out_table").string() + "\"",
                                   work / "build-table.log");
    const double table_secs = seconds_since(t0);

    criterion_z(lines[0]);
    report(lines[0]);

    auto cum = CumulativeZ2Table::load((cache / "cumz2.csv").string());
    cum.extend(kExperimentEnd);
    const auto cum_ptr = std::make_shared<const CumulativeZ2Table>(std::move(cum));
    const LadderTable lt = LadderTable::build(cum_ptr, LadderConstants{});

    criterion_lemma(lines[1], lt);
    report(lines[1]);
    criterion_iterated(lines[2], lt);
    report(lines[2]);
    criterion_recession(lines[3], lt);
    report(lines[3]);
    criterion_theorem(lines[4], window_means(lt));
    report(lines[4]);
    criterion_chain(lines[5], lt);
    report(lines[5]);
    criterion_mean_value(lines[6], lt);
    report(lines[6]);
    criterion_timing(lines[7], table_secs, table_code, all_secs, all_code);
    report(lines[7]);
    criterion_properties(lines[8], lt);
    report(lines[8]);
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }

  int failed = 0;
  for (const Line& l : lines) failed += l.pass ? 0 : 1;
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
