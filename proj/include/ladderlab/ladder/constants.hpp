#pragma once

#include <cmath>
#include <numbers>
#include <sstream>

#include "ladderlab/error.hpp"

namespace ladderlab {

struct LadderConstants {
  double c = std::numbers::egamma;
  double ln_two_pi = std::log(2.0 * std::numbers::pi);
  double c0 = 0.0;
  double T0 = 1e3;

  // G' vanishes at 2 pi e^{-1-c}; T0 must sit well above that and above
  // e^{1+c}, the larger of the two bounds.
  double min_threshold() const { return std::exp(1.0 + c); }

  void validate() const {
    if (!(c > 0.0 && c < 1.0)) throw Error(ErrorKind::usage, "ladder constants: need 0 < c < 1");
    if (!(T0 > min_threshold())) {
      std::ostringstream msg;
      msg << "ladder constants: T0 = " << T0 << " must exceed e^(1+c) = " << min_threshold();
      throw Error(ErrorKind::usage, msg.str());
    }
  }

  bool operator==(const LadderConstants&) const = default;
};

// G(Y) = Y ln Y + (c - ln 2 pi) Y + c0, the smooth part of int_0^Y Z^2.
// Defined for Y >= 1.
inline double smooth_hl_G(double Y, const LadderConstants& k) {
  if (!(Y >= 1.0)) throw Error(ErrorKind::domain, "smooth_hl_G: requires Y >= 1");
  return Y * std::log(Y) + (k.c - k.ln_two_pi) * Y + k.c0;
}

inline double smooth_hl_G_prime(double Y, const LadderConstants& k) {
  if (!(Y >= 1.0)) throw Error(ErrorKind::domain, "smooth_hl_G_prime: requires Y >= 1");
  return std::log(Y) + 1.0 + k.c - k.ln_two_pi;
}

}  // namespace ladderlab
