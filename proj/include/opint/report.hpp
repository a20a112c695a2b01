#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opint {

/// Outcome of one identity or convergence check. residual_rel is the
/// absolute residual divided by (1 + reference scale), so relative
/// thresholds carry a built-in absolute floor.
struct CheckReport {
  std::string identity;
  double p = 2.0;
  double residual_abs = 0.0;
  double residual_rel = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::vector<double> sequence;  // per-step errors for sweep checks
};

}  // namespace opint
