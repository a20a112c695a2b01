#pragma once

#include <span>
#include <vector>

#include "opint/circle_fn.hpp"
#include "opint/common.hpp"

namespace opint {

/// Tuple of unit-modulus nodes together with its coincidence partition:
/// nodes within chordal distance kConfluenceTol belong to one cluster and
/// are treated as equal by the confluent recursion.
class NodeTuple {
 public:
  explicit NodeTuple(std::vector<cplx> nodes, double cluster_tol = kConfluenceTol);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<cplx>& nodes() const { return nodes_; }
  const std::vector<int>& cluster_of() const { return cluster_of_; }
  double cluster_tol() const { return tol_; }
  bool has_confluence() const;

 private:
  std::vector<cplx> nodes_;
  std::vector<int> cluster_of_;
  double tol_;
};

/// Complete homogeneous symmetric polynomial h_k(xs); h_0 = 1, h_k = 0 for
/// k < 0.
cplx complete_homogeneous(int k, std::span<const cplx> xs);

/// Divided difference of the monomial z^power over the nodes, order
/// n = nodes.size() - 1, valid at coincident nodes:
///   power m >= 0:  h_{m-n}(nodes)
///   power -q < 0:  (-1)^n (prod nodes)^{-1} h_{q-1}(1/nodes)
/// Both expressions are polynomial in the nodes and their reciprocals, so
/// no difference quotient and no cancellation is involved.
cplx monomial_divdiff(int power, std::span<const cplx> nodes);
cplx monomial_divdiff(int power, const NodeTuple& nodes, int order);

/// Divided difference of a trig polynomial via the monomial expansion,
/// coefficient-linear. This is the evaluation path used by operator-integral
/// symbols; the recursion below is the cross-check.
cplx symbol_eval(const TrigPoly& f, int order, std::span<const cplx> nodes);
cplx symbol_eval(const TrigPoly& f, int order, const NodeTuple& nodes);

/// Divided difference by the defining recursion
///   f[.](x1,..,x_{n+1}) = (f[.](x1,x3,..) - f[.](x2,x3,..)) / (x1 - x2),
/// taking the confluent branch d/dx1 f[.](x1,x3,..) when the two leading
/// nodes fall in one coincidence cluster. Nodes are regrouped so coincident
/// nodes sit in the leading slots, which is legitimate by permutation
/// symmetry. Requires f at least order-times differentiable.
cplx divided_difference(const CircleFunction& f, const NodeTuple& nodes, int order);

}  // namespace opint
