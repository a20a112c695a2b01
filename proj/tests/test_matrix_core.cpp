#include <doctest.h>

#include <cmath>
#include <numbers>

#include "opint/harness.hpp"
#include "opint/matrix_core.hpp"

using namespace opint;

namespace {

Mat diag2(cplx a, cplx b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_SUITE("matrix_core") {

TEST_CASE("exponent domain") {
  CHECK_THROWS_AS(SchattenExponent{1.0}, std::invalid_argument);
  CHECK_THROWS_AS(SchattenExponent{0.5}, std::invalid_argument);
  CHECK_THROWS_AS(SchattenExponent{HUGE_VAL}, std::invalid_argument);
  CHECK_NOTHROW(SchattenExponent{1.5});
}

TEST_CASE("unitarity is enforced at construction") {
  CHECK_NOTHROW(UnitaryMatrix::identity(3));
  Mat bad = Mat::Identity(2, 2);
  bad(0, 0) = 1.5;
  CHECK_THROWS_AS(UnitaryMatrix{bad}, std::invalid_argument);
  CHECK_THROWS_AS(UnitaryMatrix(Mat::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("spectral decomposition invariants on random unitaries") {
  InstanceGenerator gen(12);
  for (int d : {2, 3, 4, 6}) {
    const UnitaryMatrix u = gen.unitary(d);
    Mat sum_p = Mat::Zero(d, d);
    Mat rebuilt = Mat::Zero(d, d);
    for (const auto& c : u.clusters()) {
      CHECK(std::abs(std::abs(c.eigenvalue) - 1.0) < 1e-10);
      CHECK(c.multiplicity >= 1);
      // Hermitian idempotent
      CHECK(operator_norm(Mat(c.projection - c.projection.adjoint())) < 1e-9);
      CHECK(operator_norm(Mat(c.projection * c.projection - c.projection)) < 1e-9);
      sum_p += c.projection;
      rebuilt += c.eigenvalue * c.projection;
    }
    CHECK(operator_norm(Mat(sum_p - Mat::Identity(d, d))) < 1e-9);
    CHECK(operator_norm(Mat(rebuilt - u.matrix())) < 1e-9);
    // cross-cluster products vanish
    for (std::size_t i = 0; i < u.clusters().size(); ++i)
      for (std::size_t j = i + 1; j < u.clusters().size(); ++j)
        CHECK(operator_norm(
                  Mat(u.clusters()[i].projection * u.clusters()[j].projection)) <
              1e-9);
  }
}

TEST_CASE("repeated eigenvalues share one cluster") {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = cplx(0, 1);
  const UnitaryMatrix u(m);
  REQUIRE(u.cluster_count() == 2);
  int total = 0;
  bool found_double = false;
  for (const auto& c : u.clusters()) {
    total += c.multiplicity;
    if (c.multiplicity == 2) {
      found_double = true;
      CHECK(std::abs(c.eigenvalue - cplx(1, 0)) < 1e-10);
      CHECK(std::abs(c.projection.trace() - cplx(2, 0)) < 1e-9);
    }
  }
  CHECK(total == 3);
  CHECK(found_double);
}

TEST_CASE("norms at hand values") {
  const Mat d34 = diag2(3.0, 4.0);
  CHECK(schatten_norm(d34, 1.0) == doctest::Approx(7.0));
  CHECK(schatten_norm(d34, 2.0) == doctest::Approx(5.0));
  CHECK(operator_norm(d34) == doctest::Approx(4.0));

  CHECK(schatten_norm(Mat::Identity(3, 3), 2.0) == doctest::Approx(std::sqrt(3.0)));

  Mat rank_one = Mat::Zero(3, 3);
  rank_one(0, 1) = 1.0;
  for (double p : {0.5, 1.0, 2.0, 5.0})
    CHECK(schatten_norm(rank_one, p) == doctest::Approx(1.0));

  CHECK_THROWS_AS(schatten_norm(d34, 0.0), std::invalid_argument);
}

TEST_CASE("Schatten norms are unitarily invariant") {
  InstanceGenerator gen(31);
  const Mat x = gen.ginibre(4);
  const UnitaryMatrix w = gen.unitary(4);
  const UnitaryMatrix v = gen.unitary(4);
  for (double p : {1.5, 2.0, 3.0}) {
    const double a = schatten_norm(x, p);
    const double b = schatten_norm(Mat(w.matrix() * x * v.matrix()), p);
    CHECK(std::abs(a - b) <= 1e-10 * (1.0 + a));
  }
}

TEST_CASE("Hoelder chain for products") {
  InstanceGenerator gen(47);
  for (double p : {2.0, 3.0, 4.0}) {
    const Mat k1 = gen.ginibre(4);
    const Mat k2 = gen.ginibre(4);
    const Mat k3 = gen.ginibre(4);
    CHECK(schatten_norm(Mat(k1 * k2), p / 2.0) <=
          schatten_norm(k1, p) * schatten_norm(k2, p) + 1e-9);
    CHECK(schatten_norm(Mat(k1 * k2 * k3), p / 3.0) <=
          schatten_norm(k1, p) * schatten_norm(k2, p) * schatten_norm(k3, p) +
              1e-9);
  }
}

TEST_CASE("Hermitian exponentials") {
  CHECK(operator_norm(Mat(hermitian_exp_i(Mat::Zero(2, 2)) - Mat::Identity(2, 2))) <
        1e-14);

  const Mat a = diag2(std::numbers::pi, 0.0);
  const Mat e = hermitian_exp_i(a);
  CHECK(std::abs(e(0, 0) - cplx(-1, 0)) < 1e-14);
  CHECK(std::abs(e(1, 1) - cplx(1, 0)) < 1e-14);

  const UnitaryMatrix u0 = UnitaryMatrix::identity(2);
  CHECK_THROWS_AS(make_unitary_from_hermitian(Mat(diag2(cplx(0, 1), 0.0)), u0),
                  std::invalid_argument);

  InstanceGenerator gen(8);
  const Mat h = gen.hermitian(4);
  const UnitaryMatrix w = make_unitary_from_hermitian(h, gen.unitary(4));
  CHECK(w.dim() == 4);  // construction itself revalidates unitarity
}

TEST_CASE("exponential difference is bounded by the generator difference") {
  InstanceGenerator gen(91);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat a = gen.hermitian(3);
    const Mat b = gen.hermitian(3);
    const Mat u = gen.unitary(3).matrix();
    for (double p : {1.5, 2.0, 3.0}) {
      const double lhs =
          schatten_norm(Mat(hermitian_exp_i(a) * u - hermitian_exp_i(b) * u), p);
      CHECK(lhs <= schatten_norm(Mat(a - b), p) + 1e-9);
    }
  }
}

TEST_CASE("exponential series tail") {
  InstanceGenerator gen(64);
  const Mat a = gen.hermitian_unit(3);

  // from_order 0 is the full exponential
  CHECK(operator_norm(Mat(exp_i_tail(a, 0) - hermitian_exp_i(a))) < 1e-12);

  // tail(l) + partial sum reassembles the exponential
  const cplx i(0, 1);
  Mat partial = Mat::Zero(3, 3);
  Mat power = Mat::Identity(3, 3);
  double fact = 1.0;
  for (int k = 0; k < 4; ++k) {
    if (k > 0) {
      power = i * (a * power);
      fact *= k;
    }
    partial += power / fact;
    CHECK(operator_norm(Mat(exp_i_tail(a, k + 1) + partial - hermitian_exp_i(a))) <
          1e-12);
  }

  // against a long truncated series: for unit operator norm the terms past
  // order 40 are below machine precision
  Mat series = Mat::Zero(3, 3);
  Mat pw = Mat::Identity(3, 3);
  double f = 1.0;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) {
      pw = i * (a * pw);
      f *= k;
    }
    if (k >= 2) series += pw / f;
  }
  CHECK(operator_norm(Mat(exp_i_tail(a, 2) - series)) < 1e-13);
}

TEST_CASE("spectral calculus at hand values") {
  const UnitaryMatrix u(diag2(cplx(0, 1), cplx(-1, 0)));
  const Mat s = func_calculus(CircleFunction(TrigPoly::monomial(2)), u);
  CHECK(std::abs(s(0, 0) - cplx(-1, 0)) < 1e-12);
  CHECK(std::abs(s(1, 1) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(s(0, 1)) < 1e-12);

  InstanceGenerator gen(3);
  const UnitaryMatrix w = gen.unitary(4);
  CHECK(operator_norm(
            Mat(func_calculus(CircleFunction(TrigPoly::monomial(1)), w) -
                w.matrix())) < 1e-9);

  std::map<int, cplx> cs{{1, cplx(1, 0)}, {-1, cplx(1, 0)}};
  const Mat both = func_calculus(CircleFunction(TrigPoly(std::move(cs))), w);
  CHECK(operator_norm(Mat(both - w.matrix() - w.matrix().adjoint())) < 1e-9);
}

TEST_CASE("spectral calculus is multiplicative") {
  InstanceGenerator gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const UnitaryMatrix u = gen.unitary(3);
    const TrigPoly f = gen.trigpoly(3);
    const TrigPoly g = gen.trigpoly(3);
    const Mat lhs = func_calculus(CircleFunction(f * g), u);
    const Mat rhs = func_calculus(CircleFunction(f), u) *
                    func_calculus(CircleFunction(g), u);
    CHECK(operator_norm(Mat(lhs - rhs)) <= 1e-8 * (1.0 + operator_norm(rhs)));
  }
}

}  // TEST_SUITE
