#pragma once

#include <stdexcept>
#include <string>

namespace ladderlab {

// Base of every error raised by the library. `kind()` is stable and is what
// the CLI maps onto exit codes.
enum class ErrorKind {
  domain,
  accuracy,
  tolerance_not_met,
  not_converged,
  out_of_table,
  below_threshold,
  overlap,
  no_crossing,
  admissibility,
  usage,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::tolerance_not_met: return "tolerance-not-met";
    case ErrorKind::not_converged: return "not-converged";
    case ErrorKind::out_of_table: return "out-of-table";
    case ErrorKind::below_threshold: return "below-threshold";
    case ErrorKind::overlap: return "overlap";
    case ErrorKind::no_crossing: return "no-crossing";
    case ErrorKind::admissibility: return "admissibility";
    case ErrorKind::usage: return "usage";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

// Numerical failures (solver or quadrature could not reach the requested
// accuracy). The CLI reports these with a dedicated exit code.
inline bool is_numerical(ErrorKind kind) {
  return kind == ErrorKind::accuracy || kind == ErrorKind::tolerance_not_met ||
         kind == ErrorKind::not_converged || kind == ErrorKind::no_crossing;
}

}  // namespace ladderlab
