#include <doctest.h>

#include <cmath>
#include <numbers>

#include "opint/circle_fn.hpp"

using namespace opint;

namespace {

TrigPoly from_pairs(std::initializer_list<std::pair<int, cplx>> cs) {
  std::map<int, cplx> m;
  for (const auto& [deg, c] : cs) m[deg] = c;
  return TrigPoly(std::move(m));
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("circle_fn") {

TEST_CASE("monomial evaluation on the circle") {
  const TrigPoly z2 = TrigPoly::monomial(2);
  CHECK(std::abs(z2.eval(cplx(0, 1)) - cplx(-1, 0)) < 1e-15);

  const TrigPoly one = TrigPoly::constant(1.0);
  CHECK(std::abs(one.eval(circle_point(0.3)) - cplx(1, 0)) < 1e-15);

  // f(z) = z + 1/z restricted to the circle is 2 cos(theta)
  const TrigPoly f = from_pairs({{1, 1.0}, {-1, 1.0}});
  CHECK(std::abs(f.eval(circle_point(kPi / 3)) - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(f.eval(circle_point(0.71)) - cplx(2 * std::cos(0.71), 0)) < 1e-14);
}

TEST_CASE("evaluation rejects points off the circle") {
  const TrigPoly f = TrigPoly::monomial(1);
  CHECK_THROWS_AS(f.eval(cplx(1.1, 0)), std::domain_error);
  CHECK_THROWS_AS(f.eval(cplx(0, 0)), std::domain_error);
  CHECK_NOTHROW(f.eval(cplx(1.0 + 1e-13, 0)));
}

TEST_CASE("derivative transforms coefficients") {
  const TrigPoly z3 = TrigPoly::monomial(3);
  const TrigPoly d = z3.derivative();
  REQUIRE(d.coeffs().size() == 1);
  CHECK(d.coeffs().at(2) == cplx(3, 0));

  const TrigPoly zm2 = TrigPoly::monomial(-2);
  const TrigPoly dm = zm2.derivative();
  REQUIRE(dm.coeffs().size() == 1);
  CHECK(dm.coeffs().at(-3) == cplx(-2, 0));

  // constants vanish and the zero polynomial stays empty
  CHECK(TrigPoly::constant(5.0).derivative().empty());
  CHECK(TrigPoly().derivative().empty());
}

TEST_CASE("second derivative against an angular difference-quotient oracle") {
  // f(z) = z^2 + 1/z; exact second circle derivative is 2 + 2 z^{-3}, so
  // f''(1) = 4. The oracle differentiates g(theta) = f(e^{i theta}) with
  // central stencils and converts through g'' = -z^2 f'' - z f' at z = 1.
  const TrigPoly f = from_pairs({{2, 1.0}, {-1, 1.0}});
  CHECK(std::abs(f.derivative(2).eval(cplx(1, 0)) - cplx(4, 0)) < 1e-14);

  auto g = [&](double theta) { return f.eval(circle_point(theta)); };
  auto g2 = [&](double h) { return (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h); };
  auto g1 = [&](double h) { return (g(h) - g(-h)) / (2.0 * h); };
  const double h = 1e-4;
  const cplx gpp = (4.0 * g2(h / 2) - g2(h)) / 3.0;
  const cplx gp = (4.0 * g1(h / 2) - g1(h)) / 3.0;
  const cplx fp = gp / cplx(0, 1);         // f'(1) = g'(0) / i
  const cplx fpp = -gpp - fp;              // f''(1) = -g''(0) - f'(1)
  CHECK(std::abs(fpp - cplx(4, 0)) < 1e-7);
  CHECK(std::abs(fp - cplx(1, 0)) < 1e-9);
}

TEST_CASE("derivative commutes with evaluation along the circle") {
  const TrigPoly f = from_pairs({{3, cplx(0.7, -0.2)}, {1, 1.0}, {-2, cplx(0, 0.5)}});
  const CircleFunction cf(f);
  const CircleFunction df = cf.derivative();
  const double h = 1e-6;
  for (int j = 0; j < 100; ++j) {
    const double theta = 2 * kPi * j / 100.0 + 0.013;
    const cplx z0 = circle_point(theta);
    const cplx z1 = circle_point(theta + h);
    const cplx quotient = (cf.eval(z1) - cf.eval(z0)) / (z1 - z0);
    CHECK(std::abs(quotient - df.eval(z0)) < 1e-4);
  }
}

TEST_CASE("arithmetic and coefficient mass") {
  const TrigPoly z = TrigPoly::monomial(1);
  const TrigPoly prod = (z + TrigPoly::constant(1.0)) * (z - TrigPoly::constant(1.0));
  REQUIRE(prod.coeffs().size() == 2);
  CHECK(prod.coeffs().at(2) == cplx(1, 0));
  CHECK(prod.coeffs().at(0) == cplx(-1, 0));

  // mass(w) = sum |c_m| max(1,|m|)^w; for 2z^3 + z^{-2}:
  //   w=0 -> 3, w=1 -> 8, w=2 -> 22
  const TrigPoly f = from_pairs({{3, 2.0}, {-2, 1.0}});
  CHECK(f.coeff_mass(0) == doctest::Approx(3.0));
  CHECK(f.coeff_mass(1) == doctest::Approx(8.0));
  CHECK(f.coeff_mass(2) == doctest::Approx(22.0));
  CHECK(f.max_degree() == 3);

  const TrigPoly half = f.scaled(0.5);
  CHECK(half.coeff_mass(0) == doctest::Approx(1.5));
}

TEST_CASE("closure functions carry finitely many derivatives") {
  // closure for f(z) = z^2 with one stored derivative
  CircleClosure c;
  c.value = [](cplx z) { return z * z; };
  c.derivatives = {[](cplx z) { return 2.0 * z; }};
  const CircleFunction f(std::move(c));
  CHECK(f.smoothness() == 1);
  CHECK(std::abs(f.eval(cplx(0, 1)) - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(f.derivative().eval(cplx(0, 1)) - cplx(0, 2)) < 1e-15);
  CHECK_THROWS_AS(f.derivative(2), std::domain_error);

  const CircleFunction poly(TrigPoly::monomial(4));
  CHECK(poly.smoothness() > 1000);
}

TEST_CASE("grid sup norm") {
  CHECK(sup_norm(CircleFunction(TrigPoly::monomial(5))) == doctest::Approx(1.0));
  const TrigPoly f = from_pairs({{1, 1.0}, {-1, 1.0}});
  CHECK(sup_norm(CircleFunction(f)) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(sup_norm(CircleFunction(TrigPoly())) == 0.0);
  CHECK_THROWS_AS(sup_norm(CircleFunction(TrigPoly()), 32), std::invalid_argument);
}

TEST_CASE("Cesaro smoothing damps coefficients by 1 - |m|/k") {
  // f(z) = z at k = 3: c_1 scales to 2/3 and every other band is numerically
  // dead (the projection keeps all degrees below k)
  const TrigPoly fk = fejer_approx(CircleFunction(TrigPoly::monomial(1)), 3);
  REQUIRE(fk.coeffs().count(1) == 1);
  CHECK(std::abs(fk.coeffs().at(1) - cplx(2.0 / 3.0, 0)) < 1e-12);
  for (const auto& [m, c] : fk.coeffs())
    if (m != 1) CHECK(std::abs(c) < 1e-12);
  CHECK(fk.max_degree() <= 2);

  // unit mass: constants are reproduced for every order
  const TrigPoly c5 = fejer_approx(CircleFunction(TrigPoly::constant(5.0)), 4);
  REQUIRE(c5.coeffs().count(0) == 1);
  CHECK(std::abs(c5.coeffs().at(0) - cplx(5, 0)) < 1e-12);
  for (const auto& [m, c] : c5.coeffs())
    if (m != 0) CHECK(std::abs(c) < 1e-12);

  CHECK_THROWS_AS(fejer_approx(CircleFunction(TrigPoly::monomial(1)), 200, 512),
                  std::invalid_argument);
}

TEST_CASE("Cesaro smoothing against direct kernel-convolution quadrature") {
  // independent oracle: phi_k(z0) = (1/N) sum_j f(e^{i(theta0 - t_j)}) F_k(t_j)
  // with the closed-form kernel F_k(t) = (1/k) (sin(kt/2)/sin(t/2))^2. The
  // integrand is a trig polynomial of degree < deg(f) + k, so trapezoidal
  // quadrature on N = 4096 points is exact to rounding.
  const TrigPoly f = from_pairs({{2, cplx(1.0, 0.5)}, {1, 1.0}, {-1, cplx(0, -2.0)}});
  const int k = 2;
  const TrigPoly fk = fejer_approx(CircleFunction(f), k);

  auto kernel = [&](double t) {
    const double s = std::sin(t / 2);
    if (std::abs(s) < 1e-12) return double(k);
    const double top = std::sin(k * t / 2);
    return top * top / (double(k) * s * s);
  };
  const int n_quad = 4096;
  for (double theta0 : {0.0, 0.9, 2.4}) {
    cplx acc = 0.0;
    for (int j = 0; j < n_quad; ++j) {
      const double t = 2 * kPi * j / n_quad;
      acc += f.eval(circle_point(theta0 - t)) * kernel(t);
    }
    acc /= double(n_quad);
    CHECK(std::abs(acc - fk.eval(circle_point(theta0))) < 1e-12);
  }
}

TEST_CASE("Cesaro smoothing converges and never amplifies derivatives") {
  const TrigPoly f = from_pairs({{2, 1.0}});
  const CircleFunction cf(f);
  double prev = 1e300;
  for (int k : {4, 8, 16, 32}) {
    const TrigPoly fk = fejer_approx(cf, k);
    double err = 0.0;
    for (int j = 0; j < 512; ++j) {
      const cplx z = circle_point(2 * kPi * j / 512.0);
      err = std::max(err, std::abs(fk.eval(z) - cf.eval(z)));
    }
    // Cesaro weight deficit: error <= (M/k) sum |c_m| for degree-M input
    CHECK(err <= 2.0 / k + 1e-12);
    CHECK(err < prev);
    prev = err;
  }

  // smoothing shrinks every coefficient, so derivative sup norms cannot grow
  const TrigPoly g = from_pairs({{4, cplx(0.3, 1.0)}, {1, -2.0}, {-3, cplx(1.0, 1.0)}});
  for (int m = 0; m <= 2; ++m) {
    const CircleFunction gm = CircleFunction(g).derivative(m);
    const TrigPoly gk = fejer_approx(CircleFunction(g), 8);
    CHECK(sup_norm(CircleFunction(gk).derivative(m)) <= sup_norm(gm) + 1e-8);
  }
}

}  // TEST_SUITE
