#include "opint/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace opint {

std::vector<int> cluster_unit_circle(std::span<const cplx> values, double tol) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::arg(values[a]) < std::arg(values[b]);
  });

  std::vector<int> label(n, 0);
  int next = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (pos > 0 && std::abs(values[order[pos]] - values[order[pos - 1]]) > tol) ++next;
    label[order[pos]] = next;
  }
  // the sweep starts at arg = -pi; the first and last groups may meet across
  // the branch cut
  if (next > 0 && std::abs(values[order[0]] - values[order[n - 1]]) <= tol) {
    const int last = next;
    for (int& l : label)
      if (l == last) l = 0;
    // labels stay contiguous because only the top label was folded away
  }
  return label;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y,
                        double floor) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > floor) || !(x[i] > 0.0)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const std::size_t m = lx.size();
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / denom;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t suite_seed, std::uint64_t trial) {
  return splitmix64(suite_seed ^ splitmix64(trial + 0x51ED2701A3C5E897ull));
}

}  // namespace opint
