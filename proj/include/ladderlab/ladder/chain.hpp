#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "ladderlab/error.hpp"
#include "ladderlab/experiments/config.hpp"
#include "ladderlab/ladder/phi1.hpp"

namespace ladderlab {

struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Segments [phi1^k(T), phi1^k(T+U)] for k = 0..n+1 and the gaps
// gap[k-1] = phi1^{k-1}(T) - phi1^k(T+U) between neighbours, k = 1..n+1.
struct IterationChain {
  int n = 0;
  double T = 0.0;
  double U = 0.0;
  std::vector<Segment> segments;
  std::vector<double> gaps;
  std::vector<double> gap_ratios;     // gap * ln T / ((1 - c) T)
  std::vector<double> length_ratios;  // segment length / U (empty when U = 0)
};

inline IterationChain build_chain(const ExperimentConfig& config, const LadderTable& table) {
  const LadderConstants& k = table.constants();
  config.validate(k);
  IterationChain ch;
  ch.n = config.n;
  ch.T = config.T;
  ch.U = config.U();
  double lo = ch.T, hi = ch.T + ch.U;
  ch.segments.push_back({lo, hi});
  for (int j = 1; j <= ch.n + 1; ++j) {
    for (double* x : {&lo, &hi}) {
      *x = table.phi1(*x);
      if (!(*x >= k.T0)) {
        std::ostringstream msg;
        msg << "chain: iterate k=" << j << " = " << *x << " is below T0 = " << k.T0;
        throw BelowThresholdError(msg.str(), j);
      }
    }
    ch.segments.push_back({lo, hi});
  }
  const double scale = (1.0 - k.c) * ch.T / std::log(ch.T);
  for (int j = 1; j <= ch.n + 1; ++j) {
    const Segment& right = ch.segments[static_cast<std::size_t>(j - 1)];
    const Segment& left = ch.segments[static_cast<std::size_t>(j)];
    const double gap = right.lo - left.hi;
    if (!(gap > 0.0) || !(left.hi >= left.lo)) {
      std::ostringstream msg;
      msg << "chain: segments " << j << " and " << (j - 1) << " overlap (gap " << gap << ")";
      throw Error(ErrorKind::overlap, msg.str());
    }
    ch.gaps.push_back(gap);
    ch.gap_ratios.push_back(gap / scale);
  }
  if (ch.U > 0.0) {
    for (const Segment& s : ch.segments) ch.length_ratios.push_back(s.length() / ch.U);
  }
  return ch;
}

}  // namespace ladderlab
