#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ladderlab/experiments/checks.hpp"
#include "ladderlab/experiments/report.hpp"

namespace ladderlab {

// Thresholds for the checks that hold exactly by construction.
struct ExactTolerances {
  double lemma = 1e-6;
  double iterated = 1e-5;
  double mean_value = 1e-6;
};

inline std::string indexed(const std::string& name, int k) { return name + "_k" + std::to_string(k); }

// Recession of the ladder below the identity, segment lengths, gaps and the
// threshold condition on every iterate.
inline VerificationReport recession_report(const ExperimentConfig& config, const LadderTable& table,
                                           const PassBands& bands) {
  const IterationChain ch = build_chain(config, table);
  const LadderConstants& k = table.constants();
  const int n = config.n;
  const double T = ch.T, U = ch.U;
  VerificationReport rep;
  const RatioBand rec_band = bands.range("recession", n, T);
  for (const auto& [name, t, p] : {std::tuple{"recession_at_T", T, ch.segments[1].lo},
                                   std::tuple{"recession_at_T_plus_U", T + U, ch.segments[1].hi}}) {
    rep.records.push_back(ratio_record(name, n, T, U, (t - p) * std::log(t), (1.0 - k.c) * t, rec_band));
  }
  for (std::size_t j = 0; j < ch.segments.size(); ++j) {
    const double lo = ch.segments[j].lo;
    rep.records.push_back(
        residual_record(indexed("threshold", static_cast<int>(j)), n, T, U, lo, k.T0, std::max(0.0, k.T0 - lo), 0.0));
  }
  if (U > 0.0) {
    for (std::size_t j = 0; j < ch.segments.size(); ++j) {
      rep.records.push_back(ratio_record(indexed("segment_length", static_cast<int>(j)), n, T, U,
                                         ch.segments[j].length(), U, bands.range("segment_length", n, T)));
    }
  }
  const double gap_scale = (1.0 - k.c) * T / std::log(T);
  for (std::size_t j = 0; j < ch.gaps.size(); ++j) {
    rep.records.push_back(ratio_record(indexed("gap", static_cast<int>(j + 1)), n, T, U, ch.gaps[j], gap_scale,
                                       bands.range("gap", n, T)));
  }
  return rep;
}

inline VerificationReport lemma_report(const ExperimentConfig& config, const LadderTable& table,
                                       const ZEvalConfig& cfg, const ExactTolerances& tol = {}) {
  VerificationReport rep;
  for (const auto& fn : standard_test_functions()) {
    const SubstitutionCheck c = lemma_substitution_residual(fn, config, table, cfg);
    rep.records.push_back(
        residual_record("lemma_" + fn.name, config.n, config.T, config.U(), c.lhs, c.rhs, c.residual, tol.lemma));
  }
  return rep;
}

inline VerificationReport iterated_report(const ExperimentConfig& config, const LadderTable& table,
                                          const ZEvalConfig& cfg, const ExactTolerances& tol = {}) {
  const SubstitutionCheck c = iterated_substitution_residual(config, table, cfg);
  VerificationReport rep;
  rep.records.push_back(residual_record("iterated_substitution", config.n, config.T, config.U(), c.lhs, c.rhs,
                                        c.residual, tol.iterated));
  return rep;
}

// Ratio on `windows` adjacent windows; the mean is checked against its band,
// the spread is reported only.
inline VerificationReport theorem_report(const ExperimentConfig& config, const LadderTable& table,
                                         const ZEvalConfig& cfg, const PassBands& bands, int windows = 5) {
  const std::vector<double> r = window_ratios(config, table, cfg, windows);
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  double ss = 0.0;
  for (double v : r) ss += (v - mean) * (v - mean);
  const double sd = r.size() > 1 ? std::sqrt(ss / static_cast<double>(r.size() - 1)) : 0.0;
  const int n = config.n;
  const double T = config.T, U = config.U();
  VerificationReport rep;
  rep.records.push_back(ratio_record("theorem_ratio_window0", n, T, U, r.front() * U * std::pow(std::log(T), n + 1),
                                     U * std::pow(std::log(T), n + 1), std::numeric_limits<double>::infinity()));
  rep.records.push_back(ratio_record("theorem_ratio_mean", n, T, U, mean, 1.0, bands.range("theorem_ratio", n, T)));
  CheckRecord spread{"theorem_ratio_spread", n, T, U, sd, mean};
  spread.ratio = sd / mean;
  spread.tolerance = std::numeric_limits<double>::infinity();
  spread.pass = true;
  rep.records.push_back(spread);
  return rep;
}

inline VerificationReport mean_value_report(const ExperimentConfig& config, const LadderTable& table,
                                            const ZEvalConfig& cfg, const PassBands& bands, double eps_ineq = 0.2,
                                            const ExactTolerances& tol = {}) {
  const MeanValueReport mv = mean_value_tau(config, table, cfg, eps_ineq);
  const int n = config.n;
  const double T = config.T, U = config.U();
  VerificationReport rep;
  rep.records.push_back(residual_record("mean_value_tau", n, T, U, mv.product_at_tau, mv.mean_value,
                                        mv.relative_residual, tol.mean_value));
  rep.records.push_back(ratio_record("geometric_mean", n, T, U, mv.geometric_mean, mv.ln_T,
                                     bands.range("geometric_mean", n, T)));
  rep.records.push_back(ratio_record("log_mean", n, T, U, mv.log_mean, 0.5 * std::log(mv.ln_T),
                                     bands.range("log_mean", n, T)));
  const double am_bound = (1.0 - eps_ineq) * mv.ln_T;
  rep.records.push_back(residual_record("arithmetic_mean_bound", n, T, U, mv.arithmetic_mean, am_bound,
                                        std::max(0.0, am_bound - mv.arithmetic_mean), 0.0));
  const double hm_bound = 1.0 / ((1.0 + eps_ineq) * mv.ln_T);
  CheckRecord hm = residual_record("harmonic_mean_bound", n, T, U, mv.inverse_mean, hm_bound,
                                   std::max(0.0, hm_bound - mv.inverse_mean), 0.0);
  hm.pass = mv.harmonic_bound_holds();
  rep.records.push_back(hm);
  rep.provenance["tau"] = mv.tau;
  rep.provenance["eps_ineq"] = eps_ineq;
  return rep;
}

}  // namespace ladderlab
