#pragma once

#include "opint/calculus.hpp"

namespace opint {

/// Remainder of the operator Taylor expansion along a unitary path, with the
/// norms and sweep statistics a report needs. p_effective = p / order may
/// fall below 1, in which case the recorded value is a quasi-norm and the
/// flag says so.
struct RemainderReport {
  int order = 1;
  double p = 2.0;
  double p_effective = 2.0;
  bool quasi_norm = false;
  double remainder_norm = 0.0;    // |R|_{p/n} at the reference scale
  double residual_rel = 0.0;      // cross-check between the two forms
  double estimate_ratio = 0.0;    // max over the sweep of the normalized ratio
  double derivative_ratio = 0.0;  // same normalization for the n-th derivative
  double scaling_slope = 0.0;     // fitted decay order on the smallest scales
  bool pass = false;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

/// f(U(t)) - f(U(0)) - sum_{k<n} phi^(k)(0)/k!, the derivatives taken from
/// gateaux_derivative. The k-th term carries no power of t; the expansion is
/// normalized to a unit parameter step, so rescale the path to move t.
Mat remainder_direct(const UnitaryPath& path, const CircleFunction& f, double t,
                     int n, const CalculusLimits& limits = {});

/// Representation of the same remainder as a sum over compositions of n of
/// order-m integrals at (U(t), U(0),..,U(0)) whose first argument is the
/// centered path remainder U~(t) - sum_{k<l1} U~^(k)(0)/k! and whose later
/// arguments are U~^(l_j)(0)/l_j!.
Mat remainder_moi(const UnitaryPath& path, const CircleFunction& f, double t,
                  int n, const CalculusLimits& limits = {});

/// The exponential-family specialization at t = 1: first argument the exact
/// exponential series tail sum_{k>=l1} (iA)^k/k! U, later arguments
/// (iA)^{l_j}/l_j! U.
Mat remainder_exponential(const CircleFunction& f, const UnitaryMatrix& u,
                          const Mat& hermitian, int n,
                          const CalculusLimits& limits = {});

/// Sweep s -> |R_n(sA, U)|_{p/n} over a geometric scale grid. Requires
/// 1 < n < p. Records the normalized ratio against
/// (sum_m sup|f^(m)|) |sA|_p^n, the fitted slope over the four smallest
/// scales, and the analogous ratio for the n-th derivative at t = 0. Passes
/// when the slope is within 0.1 of n and the ratio stays finite.
RemainderReport estimate_sweep(const CircleFunction& f, const UnitaryMatrix& u,
                               const Mat& hermitian, int n, double p,
                               std::span<const double> scales,
                               const CalculusLimits& limits = {});

/// Default quarter-decade grid from 10^-3.5 up to 1.
std::vector<double> default_scale_grid();

}  // namespace opint
