#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "opint/divided_diff.hpp"
#include "opint/harness.hpp"

using namespace opint;

namespace {

// plain textbook recursion, valid only on pairwise distinct nodes; this is
// the ground truth the library paths are measured against
cplx naive_recursion(const std::function<cplx(cplx)>& f, std::vector<cplx> xs) {
  if (xs.size() == 1) return f(xs[0]);
  std::vector<cplx> rest(xs.begin() + 2, xs.end());
  std::vector<cplx> left{xs[0]};
  left.insert(left.end(), rest.begin(), rest.end());
  std::vector<cplx> right{xs[1]};
  right.insert(right.end(), rest.begin(), rest.end());
  return (naive_recursion(f, left) - naive_recursion(f, right)) / (xs[0] - xs[1]);
}

std::vector<cplx> distinct_circle_nodes(InstanceGenerator& gen, int count) {
  std::vector<cplx> xs;
  while (static_cast<int>(xs.size()) < count) {
    const cplx z = circle_point(2 * std::numbers::pi * gen.uniform());
    bool clear = true;
    for (const cplx& w : xs) clear = clear && std::abs(z - w) > 1e-2;
    if (clear) xs.push_back(z);
  }
  return xs;
}

}  // namespace

TEST_SUITE("divided_diff") {

TEST_CASE("node tuples validate modulus and detect coincidences") {
  CHECK_THROWS_AS(NodeTuple({cplx(2, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(NodeTuple({}), std::invalid_argument);

  const NodeTuple t({cplx(1, 0), circle_point(1e-10), cplx(-1, 0)});
  CHECK(t.cluster_of()[0] == t.cluster_of()[1]);
  CHECK(t.cluster_of()[0] != t.cluster_of()[2]);
  CHECK(t.has_confluence());

  const NodeTuple d({cplx(1, 0), cplx(0, 1), cplx(-1, 0)});
  CHECK_FALSE(d.has_confluence());
}

TEST_CASE("complete homogeneous polynomials") {
  const std::vector<cplx> xs{cplx(1, 0), cplx(0, 1)};
  CHECK(complete_homogeneous(0, xs) == cplx(1, 0));
  CHECK(std::abs(complete_homogeneous(1, xs) - cplx(1, 1)) < 1e-15);
  CHECK(complete_homogeneous(-1, xs) == cplx(0, 0));

  // h_2(1,2) = 1 + 2 + 4
  const std::vector<cplx> ys{cplx(1, 0), cplx(2, 0)};
  CHECK(std::abs(complete_homogeneous(2, ys) - cplx(7, 0)) < 1e-14);

  const std::vector<cplx> one{cplx(2, 0)};
  CHECK(std::abs(complete_homogeneous(3, one) - cplx(8, 0)) < 1e-14);
}

TEST_CASE("monomial expansion at hand values") {
  // m=2, order 1 at (1,i): h_1 = 1+i
  const std::vector<cplx> xs{cplx(1, 0), cplx(0, 1)};
  CHECK(std::abs(monomial_divdiff(2, xs) - cplx(1, 1)) < 1e-14);

  // degree below order vanishes
  const std::vector<cplx> ys{circle_point(0.1), circle_point(1.2), circle_point(2.9)};
  CHECK(std::abs(monomial_divdiff(1, ys)) < 1e-15);

  // m=-1, order 1: -1/(x1 x2); at (1,i) this is i
  CHECK(std::abs(monomial_divdiff(-1, xs) - cplx(0, 1)) < 1e-14);

  // m=-2, order 2 at real nodes (1,2,3): the expansion gives
  // (1/6) h_1(1, 1/2, 1/3) = 11/36, matching the recursion exactly
  const std::vector<cplx> zs{cplx(1, 0), cplx(2, 0), cplx(3, 0)};
  CHECK(std::abs(monomial_divdiff(-2, zs) - cplx(11.0 / 36.0, 0)) < 1e-14);
  const cplx rec = naive_recursion([](cplx z) { return 1.0 / (z * z); }, zs);
  CHECK(std::abs(rec - cplx(11.0 / 36.0, 0)) < 1e-14);
}

TEST_CASE("monomial path equals the recursion on random distinct tuples") {
  InstanceGenerator gen(401);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + int(gen.uniform() * 4);
    const std::vector<cplx> xs = distinct_circle_nodes(gen, n + 1);
    for (int m = -6; m <= 6; ++m) {
      const cplx via_poly = monomial_divdiff(m, xs);
      const cplx via_rec =
          naive_recursion([m](cplx z) { return std::pow(z, m); }, xs);
      CHECK(std::abs(via_poly - via_rec) <= 1e-8 * (1.0 + std::abs(via_rec)));
    }
  }
}

TEST_CASE("symbol evaluation is linear over monomials") {
  std::map<int, cplx> cs{{2, cplx(2, 0)}};
  const NodeTuple nodes({cplx(1, 0), cplx(0, 1)});
  CHECK(std::abs(symbol_eval(TrigPoly(std::move(cs)), 1, nodes) - cplx(2, 2)) <
        1e-14);

  CHECK(std::abs(symbol_eval(TrigPoly::constant(3.0), 1, nodes)) < 1e-15);

  // f(z) = z + 1/z at (1,-1): positive part contributes h_0 = 1 and the
  // negative part contributes -1/(1*(-1)) = 1, total 2; the recursion gives
  // (f(1) - f(-1))/2 = (2-(-2))/2 = 2 as well
  std::map<int, cplx> mixed{{1, cplx(1, 0)}, {-1, cplx(1, 0)}};
  const TrigPoly f(std::move(mixed));
  const NodeTuple pm({cplx(1, 0), cplx(-1, 0)});
  CHECK(std::abs(symbol_eval(f, 1, pm) - cplx(2, 0)) < 1e-14);
  CHECK(std::abs(divided_difference(CircleFunction(f), pm, 1) - cplx(2, 0)) <
        1e-14);
}

TEST_CASE("first order of the identity function is one") {
  const CircleFunction f(TrigPoly::monomial(1));
  InstanceGenerator gen(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto xs = distinct_circle_nodes(gen, 2);
    CHECK(std::abs(divided_difference(f, NodeTuple(xs), 1) - cplx(1, 0)) < 1e-12);
  }
}

TEST_CASE("coincident nodes take the derivative branch") {
  // f(z) = z^3 on (i, i): f'(i) = 3 i^2 = -3
  const CircleFunction f(TrigPoly::monomial(3));
  const NodeTuple twice({cplx(0, 1), cplx(0, 1)});
  CHECK(std::abs(divided_difference(f, twice, 1) - cplx(-3, 0)) < 1e-13);

  // all three nodes equal: f^[2](l,l,l) = f''(l)/2 = 3l; at l=1 this is 3
  const NodeTuple thrice({cplx(1, 0), cplx(1, 0), cplx(1, 0)});
  CHECK(std::abs(divided_difference(f, thrice, 2) - cplx(3, 0)) < 1e-13);
}

TEST_CASE("recursion on distinct pairs") {
  const CircleFunction f(TrigPoly::monomial(2));
  const NodeTuple nodes({cplx(1, 0), cplx(0, 1)});
  CHECK(std::abs(divided_difference(f, nodes, 1) - cplx(1, 1)) < 1e-14);
  CHECK_THROWS_AS(divided_difference(f, nodes, 2), std::invalid_argument);
}

TEST_CASE("degrees below the order vanish") {
  InstanceGenerator gen(55);
  for (int n = 1; n <= 4; ++n) {
    const auto xs = distinct_circle_nodes(gen, n + 1);
    for (int m = 0; m < n; ++m) {
      const CircleFunction f(TrigPoly::monomial(m));
      CHECK(std::abs(divided_difference(f, NodeTuple(xs), n)) < 1e-10);
    }
  }
}

TEST_CASE("permutation symmetry, including coincident tuples") {
  InstanceGenerator gen(19);
  const CircleFunction f(InstanceGenerator(23).trigpoly(4));

  for (int n = 1; n <= 3; ++n) {
    auto xs = distinct_circle_nodes(gen, n + 1);
    xs[0] = xs.back();  // force one coincident pair for n >= 1
    std::sort(xs.begin(), xs.end(),
              [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
    const cplx ref = divided_difference(f, NodeTuple(xs), n);
    std::vector<cplx> perm = xs;
    do {
      const cplx val = divided_difference(f, NodeTuple(perm), n);
      CHECK(std::abs(val - ref) <= 1e-9 * (1.0 + std::abs(ref)));
    } while (std::next_permutation(
        perm.begin(), perm.end(),
        [](cplx a, cplx b) { return std::arg(a) < std::arg(b); }));
  }

  // n = 4: random permutations of a distinct tuple
  auto xs = distinct_circle_nodes(gen, 5);
  const cplx ref = divided_difference(f, NodeTuple(xs), 4);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<cplx> perm = xs;
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[std::size_t(gen.uniform() * i)]);
    const cplx val = divided_difference(f, NodeTuple(perm), 4);
    CHECK(std::abs(val - ref) <= 1e-9 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("near-coincident tuples approach the confluent value") {
  const CircleFunction f(InstanceGenerator(99).trigpoly(5));
  const cplx lambda = circle_point(0.6);
  const cplx mu = circle_point(2.5);
  const cplx confluent =
      divided_difference(f, NodeTuple({lambda, lambda, mu}), 2);
  double prev = 1e300;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const cplx split = divided_difference(
        f, NodeTuple({lambda, lambda * circle_point(eps), mu}), 2);
    const double gap = std::abs(split - confluent);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev <= 1e-3 * (1.0 + std::abs(confluent)));
}

TEST_CASE("closure functions agree with the polynomial path") {
  // same function twice: once as coefficients, once as closures with exact
  // derivatives; the closure path must track the polynomial path
  const TrigPoly p = InstanceGenerator(7).trigpoly(3);
  CircleClosure c;
  c.value = [p](cplx z) { return p.eval(z); };
  for (int m = 1; m <= 3; ++m)
    c.derivatives.push_back(
        [d = p.derivative(m)](cplx z) { return d.eval(z); });
  const CircleFunction poly(p);
  const CircleFunction closure(std::move(c));

  InstanceGenerator gen(301);
  for (int n = 1; n <= 3; ++n) {
    const auto xs = distinct_circle_nodes(gen, n + 1);
    const cplx a = divided_difference(poly, NodeTuple(xs), n);
    const cplx b = divided_difference(closure, NodeTuple(xs), n);
    CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
  }

  // coincident pair: the closure branch for order 1 uses the stored
  // derivative exactly
  const cplx l0 = circle_point(1.1);
  const cplx exact = p.derivative(1).eval(l0);
  CHECK(std::abs(divided_difference(closure, NodeTuple({l0, l0}), 1) - exact) <
        1e-13);

  // higher-order confluence runs through a tangential stencil; accuracy is
  // limited by the step, not by machine precision
  const cplx mu = circle_point(2.8);
  const cplx pa = divided_difference(poly, NodeTuple({l0, l0, mu}), 2);
  const cplx ca = divided_difference(closure, NodeTuple({l0, l0, mu}), 2);
  CHECK(std::abs(pa - ca) <= 1e-5 * (1.0 + std::abs(pa)));

  // a closure holding only one derivative cannot support order 2
  CircleClosure shallow;
  shallow.value = [p](cplx z) { return p.eval(z); };
  shallow.derivatives = {[d = p.derivative(1)](cplx z) { return d.eval(z); }};
  CHECK_THROWS_AS(
      divided_difference(CircleFunction(std::move(shallow)),
                         NodeTuple({l0, circle_point(0.2), mu}), 2),
      std::domain_error);
}

}  // TEST_SUITE
