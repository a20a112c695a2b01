#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace opint {

using cplx = std::complex<double>;

inline constexpr double kCircleTol = 1e-12;     // admissible |z|-1 for point evaluation
inline constexpr double kConfluenceTol = 1e-8;  // chordal distance below which nodes coincide
inline constexpr double kSpectralClusterTol = 1e-8;

/// Partition of unit-modulus values into clusters of chordal diameter-chain
/// within `tol`. Values are sorted by argument, chained, and the wrap-around
/// pair at the branch cut is merged. Returns a label per input position,
/// labels contiguous from 0.
std::vector<int> cluster_unit_circle(std::span<const cplx> values, double tol);

/// Least-squares slope of log(y) against log(x). Pairs with y <= floor are
/// dropped as numerically dead; returns NaN when fewer than two points
/// survive.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y,
                        double floor = 0.0);

std::uint64_t splitmix64(std::uint64_t x);

/// Stable per-trial sub-seed so trials are independent of execution order.
std::uint64_t trial_seed(std::uint64_t suite_seed, std::uint64_t trial);

}  // namespace opint
