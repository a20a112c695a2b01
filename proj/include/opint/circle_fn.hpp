#pragma once

#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "opint/common.hpp"

namespace opint {

/// Finite Laurent sum sum_m c_m z^m restricted to the unit circle.
/// Degrees may be negative; zero coefficients are dropped on construction.
class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(std::map<int, cplx> coeffs);

  static TrigPoly monomial(int degree, cplx coeff = cplx(1.0, 0.0));
  static TrigPoly constant(cplx value);

  /// Point evaluation; z must satisfy ||z| - 1| <= kCircleTol.
  cplx eval(cplx z) const;

  /// Derivative in the circle sense, the limit of difference quotients taken
  /// along the circle. Coefficientwise: c_m z^m maps to m c_m z^{m-1}.
  TrigPoly derivative(int order = 1) const;

  const std::map<int, cplx>& coeffs() const { return coeffs_; }
  /// Largest |m| carrying a nonzero coefficient; 0 for the zero function.
  int max_degree() const;
  bool empty() const { return coeffs_.empty(); }

  /// sum_m |c_m| max(1,|m|)^weight, the scale that controls derivative
  /// magnitudes. Suites use it to normalize random instances.
  double coeff_mass(int weight = 0) const;

  TrigPoly operator+(const TrigPoly& rhs) const;
  TrigPoly operator-(const TrigPoly& rhs) const;
  TrigPoly operator*(const TrigPoly& rhs) const;  // coefficient convolution
  TrigPoly scaled(cplx factor) const;

 private:
  std::map<int, cplx> coeffs_;
};

/// Function on the circle given by closures: a value and its circle-sense
/// derivatives up to the order the caller can supply.
struct CircleClosure {
  std::function<cplx(cplx)> value;
  std::vector<std::function<cplx(cplx)>> derivatives;  // orders 1..n
};

/// A function on the unit circle, either an exact trig polynomial or a
/// closure bundle with finitely many stored derivatives.
class CircleFunction {
 public:
  CircleFunction(TrigPoly poly);          // NOLINT(google-explicit-constructor)
  CircleFunction(CircleClosure closure);  // NOLINT(google-explicit-constructor)

  bool is_trig_poly() const;
  const TrigPoly& poly() const;  // valid only when is_trig_poly()

  /// Highest derivative order that can be produced. Unbounded (INT_MAX) for
  /// trig polynomials.
  int smoothness() const;

  cplx eval(cplx z) const;
  CircleFunction derivative(int order = 1) const;

 private:
  std::variant<TrigPoly, CircleClosure> repr_;
};

inline constexpr int kDefaultSupGrid = 512;
inline constexpr int kMinSupGrid = 64;

/// Maximum of |f| over a uniform grid on the circle. A lower bound for the
/// true sup; grid_size >= kMinSupGrid is required.
double sup_norm(const CircleFunction& f, int grid_size = kDefaultSupGrid);

/// Cesaro smoothing of order k: the trig polynomial of degree k-1 with
/// coefficients (1 - |m|/k) fhat(m), Fourier coefficients taken by
/// trapezoidal quadrature on a uniform grid. Requires grid_size >= 4k+1 so
/// the quadrature resolves every retained mode.
TrigPoly fejer_approx(const CircleFunction& f, int k,
                      int grid_size = kDefaultSupGrid);

inline cplx circle_point(double theta) {
  return cplx(std::cos(theta), std::sin(theta));
}

}  // namespace opint
