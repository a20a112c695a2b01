#include "opint/divided_diff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opint {

namespace {

// step for the tangential derivative taken in the confluent branch when the
// function is only available as a closure
constexpr double kConfluentStep = 1e-5;

}  // namespace

NodeTuple::NodeTuple(std::vector<cplx> nodes, double cluster_tol)
    : nodes_(std::move(nodes)), tol_(cluster_tol) {
  if (nodes_.empty()) throw std::invalid_argument("node tuple must be nonempty");
  for (cplx z : nodes_)
    if (std::abs(std::abs(z) - 1.0) > kCircleTol)
      throw std::invalid_argument("node off the unit circle");
  cluster_of_ = cluster_unit_circle(nodes_, tol_);
}

bool NodeTuple::has_confluence() const {
  int max_label = 0;
  for (int l : cluster_of_) max_label = std::max(max_label, l);
  return max_label + 1 < static_cast<int>(nodes_.size());
}

cplx complete_homogeneous(int k, std::span<const cplx> xs) {
  if (k < 0) return 0.0;
  std::vector<cplx> h(k + 1, cplx(0.0, 0.0));
  h[0] = 1.0;
  // h_j(x_1..x_i) = h_j(x_1..x_{i-1}) + x_i h_{j-1}(x_1..x_i); ascending j
  // keeps h[j-1] already updated for the current variable
  for (cplx x : xs)
    for (int j = 1; j <= k; ++j) h[j] += x * h[j - 1];
  return h[k];
}

cplx monomial_divdiff(int power, std::span<const cplx> nodes) {
  const int n = static_cast<int>(nodes.size()) - 1;
  if (n < 0) throw std::invalid_argument("node tuple must be nonempty");
  if (power >= 0) return complete_homogeneous(power - n, nodes);
  const int q = -power;
  std::vector<cplx> inv(nodes.size());
  cplx prod_inv = 1.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    inv[i] = 1.0 / nodes[i];
    prod_inv *= inv[i];
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * prod_inv * complete_homogeneous(q - 1, inv);
}

cplx monomial_divdiff(int power, const NodeTuple& nodes, int order) {
  if (static_cast<int>(nodes.size()) != order + 1)
    throw std::invalid_argument("node count does not match the requested order");
  return monomial_divdiff(power, std::span<const cplx>(nodes.nodes()));
}

cplx symbol_eval(const TrigPoly& f, int order, std::span<const cplx> nodes) {
  if (static_cast<int>(nodes.size()) != order + 1)
    throw std::invalid_argument("node count does not match the requested order");
  cplx acc = 0.0;
  for (const auto& [m, c] : f.coeffs()) acc += c * monomial_divdiff(m, nodes);
  return acc;
}

cplx symbol_eval(const TrigPoly& f, int order, const NodeTuple& nodes) {
  return symbol_eval(f, order, std::span<const cplx>(nodes.nodes()));
}

namespace {

// reorder so nodes of one cluster are adjacent, clusters in order of first
// appearance; a permutation, so the divided difference is unchanged
std::vector<cplx> group_by_cluster(const std::vector<cplx>& xs, double tol) {
  const auto label = cluster_unit_circle(xs, tol);
  std::vector<cplx> out;
  out.reserve(xs.size());
  std::vector<int> seen;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const int l = label[i];
    if (std::find(seen.begin(), seen.end(), l) != seen.end()) continue;
    seen.push_back(l);
    for (std::size_t j = i; j < xs.size(); ++j)
      if (label[j] == l) out.push_back(xs[j]);
  }
  return out;
}

cplx dd_recurse(const CircleFunction& f, const std::vector<cplx>& raw, double tol) {
  const int n = static_cast<int>(raw.size()) - 1;
  if (n == 0) return f.eval(raw[0]);

  const std::vector<cplx> xs = group_by_cluster(raw, tol);
  std::vector<cplx> head(xs.begin() + 2, xs.end());

  if (std::abs(xs[0] - xs[1]) <= tol) {
    // confluent branch: differentiate the order n-1 difference in its first
    // slot
    if (f.is_trig_poly()) {
      // the monomial expansion is polynomial in the nodes, so its value at
      // the coincident tuple is exactly that derivative
      return symbol_eval(f.poly(), n, std::span<const cplx>(xs));
    }
    if (n == 1) return f.derivative(1).eval(xs[0]);
    std::vector<cplx> sub(xs.size() - 1);
    std::copy(xs.begin() + 2, xs.end(), sub.begin() + 1);
    const cplx x0 = xs[0];
    auto g = [&](double theta) {
      sub[0] = x0 * circle_point(theta);
      return dd_recurse(f, sub, tol);
    };
    auto central = [&](double h) { return (g(h) - g(-h)) / (2.0 * h); };
    const double h = kConfluentStep;
    const cplx dtheta = (4.0 * central(h / 2.0) - central(h)) / 3.0;
    return dtheta / (cplx(0.0, 1.0) * x0);
  }

  std::vector<cplx> left(xs.size() - 1), right(xs.size() - 1);
  left[0] = xs[0];
  right[0] = xs[1];
  std::copy(head.begin(), head.end(), left.begin() + 1);
  std::copy(head.begin(), head.end(), right.begin() + 1);
  return (dd_recurse(f, left, tol) - dd_recurse(f, right, tol)) / (xs[0] - xs[1]);
}

}  // namespace

cplx divided_difference(const CircleFunction& f, const NodeTuple& nodes, int order) {
  if (static_cast<int>(nodes.size()) != order + 1)
    throw std::invalid_argument("node count does not match the requested order");
  if (f.smoothness() < order)
    throw std::domain_error("function lacks the derivatives this order requires");
  return dd_recurse(f, nodes.nodes(), nodes.cluster_tol());
}

}  // namespace opint
