#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "ladderlab/error.hpp"
#include "ladderlab/ladder/constants.hpp"

namespace ladderlab {

struct ExperimentConfig {
  double T = 1e5;
  double epsilon = 1.0 / 30.0;
  int n = 0;
  double quad_tol = 1e-8;  // relative to the expected size of each integral
  std::optional<double> window_length;  // overrides U = T^{1/3 + 2 epsilon}

  double U() const { return window_length ? *window_length : std::pow(T, 1.0 / 3.0 + 2.0 * epsilon); }

  static double admissible_T(int n, const LadderConstants& k) {
    return std::max(2.0 * k.T0, std::exp(2.0 * (n + 1)));
  }

  void validate(const LadderConstants& k) const {
    if (n < 0) throw Error(ErrorKind::usage, "experiment: n must be >= 0");
    if (!(epsilon > 0.0 && epsilon <= 1.0 / 12.0)) {
      throw Error(ErrorKind::usage, "experiment: epsilon must satisfy 0 < epsilon <= 1/12");
    }
    if (!(quad_tol > 0.0)) throw Error(ErrorKind::usage, "experiment: quad_tol must be > 0");
    if (window_length && !(*window_length >= 0.0)) throw Error(ErrorKind::usage, "experiment: U must be >= 0");
    if (!(T >= admissible_T(n, k))) {
      std::ostringstream msg;
      msg << "experiment: T = " << T << " violates T >= max(2*T0, e^(2(n+1))) = " << admissible_T(n, k);
      throw Error(ErrorKind::admissibility, msg.str());
    }
  }

  bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace ladderlab
