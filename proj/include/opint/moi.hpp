#pragma once

#include <functional>
#include <span>
#include <vector>

#include "opint/divided_diff.hpp"
#include "opint/matrix_core.hpp"
#include "opint/report.hpp"

namespace opint {

/// Symbol for a multiple operator integral: a function of as many circle
/// variables as there are unitaries in the integral.
class MoiSymbol {
 public:
  /// Divided difference f[order], a function of order+1 variables.
  static MoiSymbol divided_difference(CircleFunction f, int order);
  /// Product symbol f1(x1)...fn(xn); the integral then factors exactly into
  /// f1(U1) K1 f2(U2) ... Kn-1 fn(Un).
  static MoiSymbol tensor(std::vector<CircleFunction> factors);
  /// Arbitrary pointwise symbol.
  static MoiSymbol raw(int arity, std::function<cplx(std::span<const cplx>)> fn);

  int arity() const { return arity_; }
  cplx eval(std::span<const cplx> lambdas) const;

 private:
  MoiSymbol(int arity, std::function<cplx(std::span<const cplx>)> fn)
      : arity_(arity), eval_(std::move(fn)) {}
  int arity_;
  std::function<cplx(std::span<const cplx>)> eval_;
};

struct MoiLimits {
  int max_arity = 5;
  int max_dim = 16;
  bool override_caps = false;
};

/// Spectral sum over cluster tuples of
///   symbol(l1,..,ln) P_{l1} K1 P_{l2} ... K_{n-1} P_{ln}
/// with P drawn from each unitary's cluster decomposition. Evaluated in the
/// eigenbases with one sequential accumulation pass, so results are
/// reproducible bit for bit for a fixed build.
Mat moi_apply(const MoiSymbol& symbol, std::span<const UnitaryMatrix> unitaries,
              std::span<const Mat> args, const MoiLimits& limits = {});

/// Residual of f(U) - f(V) against the order-1 integral applied to U - V.
/// Passes when the residual is at most tol * (1 + |f(U) - f(V)|_p).
CheckReport first_order_identity_check(const CircleFunction& f,
                                       const UnitaryMatrix& u,
                                       const UnitaryMatrix& v, double p,
                                       double tol = 1e-8);

/// Difference of two order-(n-1) integrals that disagree in one unitary slot
/// against the order-n integral with the unitary increment inserted as an
/// argument at that slot. aux supplies the n-1 shared unitaries; slot is
/// 1-based.
CheckReport perturbation_insert_check(const CircleFunction& f,
                                      std::span<const UnitaryMatrix> aux,
                                      const UnitaryMatrix& u,
                                      const UnitaryMatrix& v, int slot,
                                      std::span<const Mat> args, double p,
                                      double tol = 1e-8);

/// Telescoping form: the order-(n-1) integral with k leading copies of U and
/// n-k of V, minus the all-V integral, against the sum over i <= k of
/// order-n integrals with U - V inserted at slot i.
CheckReport telescoping_check(const CircleFunction& f, const UnitaryMatrix& u,
                              const UnitaryMatrix& v, int k,
                              std::span<const Mat> args, double p,
                              double tol = 1e-8);

/// Convergence of the integral when every unitary is perturbed along
/// exp(iA/2^j): records the Frobenius error sequence for j = 0..max_j; the
/// sequence must fall below threshold by the final step and decrease
/// monotonically once in the asymptotic regime (j >= 5).
CheckReport sot_convergence_check(const MoiSymbol& symbol,
                                  std::span<const UnitaryMatrix> unitaries,
                                  const Mat& direction, std::span<const Mat> args,
                                  int max_j = 20, double threshold = 1e-6);

/// Ratio |Gamma(f[n])(K)|_p / (sup|f^(n)| * prod |K_i|_{p_i}) with the
/// Hoelder split 1/p = sum 1/p_i enforced to 1e-9. The sup-norm factor is a
/// grid maximum. No bound is asserted; the ratio is recorded.
CheckReport bound_ratio_recorder(const CircleFunction& f,
                                 std::span<const UnitaryMatrix> unitaries,
                                 std::span<const Mat> args, double p,
                                 std::span<const double> p_split);

}  // namespace opint
