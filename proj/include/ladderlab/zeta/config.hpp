#pragma once

#include <string>

#include "ladderlab/error.hpp"

namespace ladderlab {

// Accuracy knobs for theta and Z. Below t_switch both are evaluated directly
// (complex log-gamma, Euler-Maclaurin); at and above it the asymptotic theta
// series and the Riemann-Siegel formula with `correction_terms` corrections.
struct ZEvalConfig {
  int correction_terms = 4;
  double t_switch = 200.0;
  double target_abs_error = 1e-8;

  void validate() const {
    if (correction_terms < 0 || correction_terms > 4) {
      throw Error(ErrorKind::usage, "correction_terms must lie in [0, 4], got " +
                                        std::to_string(correction_terms));
    }
    if (!(t_switch >= 10.0)) {
      throw Error(ErrorKind::usage, "t_switch must be >= 10, got " + std::to_string(t_switch));
    }
    if (!(target_abs_error > 0.0)) {
      throw Error(ErrorKind::usage, "target_abs_error must be > 0");
    }
  }

  friend bool operator==(const ZEvalConfig&, const ZEvalConfig&) = default;
};

}  // namespace ladderlab
