#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "opint/moi.hpp"

namespace opint {

/// Ordered tuple of positive integers with the multinomial weight
/// sum! / (l1! ... lm!), exact in integer arithmetic.
struct Composition {
  std::vector<int> parts;
  std::uint64_t weight;
};

/// All 2^{k-1} ordered compositions of k, first part outermost. k in [1, 8].
std::vector<Composition> enumerate_compositions(int k);

/// One-parameter family of unitaries U(t) with the centered family
/// U~(t) = U(t) - U(0) and its derivatives. Exponential families
/// U(t) = exp(itA) U(0) carry every derivative exactly,
/// U~^(l)(t) = (iA)^l U(t); general families supply derivative closures.
class UnitaryPath {
 public:
  static UnitaryPath exponential(Mat hermitian, UnitaryMatrix base);
  /// value(t) must be unitary for every t; derivatives[l-1](t) supplies the
  /// l-th derivative of U(t). step_scale calibrates finite-difference steps
  /// and should be of the order of the velocity |U'(t)|.
  static UnitaryPath general(std::function<Mat(double)> value,
                             std::vector<std::function<Mat(double)>> derivatives,
                             double step_scale = 1.0);

  UnitaryMatrix at(double t) const;
  Mat value(double t) const;
  Mat tilde(double t) const;  // U(t) - U(0)
  Mat tilde_derivative(int order, double t) const;
  int smoothness() const;
  int dim() const { return dim_; }
  double step_scale() const { return step_scale_; }
  bool is_exponential() const { return exponential_; }
  const Mat& generator() const;  // exponential families only

 private:
  UnitaryPath() = default;
  bool exponential_ = false;
  int dim_ = 0;
  double step_scale_ = 1.0;
  // exponential data
  Mat gen_;
  Eigen::VectorXd eigvals_;
  Mat eigvecs_;
  Mat base_;
  // general data
  std::function<Mat(double)> value_;
  std::vector<std::function<Mat(double)>> derivs_;
  Mat value0_;
};

struct CalculusLimits {
  int max_order = 4;
  int max_dim = 8;
  bool override_caps = false;
};

/// Symmetrized derivative of U -> f(U): the sum over permutations of the
/// order-k integral with k+1 copies of U applied to the permuted arguments.
Mat frechet_derivative(const CircleFunction& f, const UnitaryMatrix& u,
                       std::span<const Mat> args,
                       const CalculusLimits& limits = {});

/// First-order expansion of the order-(k-1) derivative between U and
/// V = exp(i eps A) U across an epsilon sweep: the residual must shrink at a
/// log-log slope of at least min_slope against |V - U|_p. args supplies the
/// k-1 fixed arguments.
CheckReport frechet_residual_check(const CircleFunction& f, const UnitaryMatrix& u,
                                   const Mat& direction, std::span<const Mat> args,
                                   double p, std::span<const double> eps_sweep,
                                   double min_slope = 1.8,
                                   const CalculusLimits& limits = {});

/// k-th derivative of t -> f(U(t)) as the weighted sum over compositions of
/// k of order-m integrals at U(t) applied to the centered derivatives
/// U~^(l_i)(t).
Mat gateaux_derivative(const UnitaryPath& path, const CircleFunction& f, double t,
                       int k, const CalculusLimits& limits = {});

/// Same derivative for the family exp(itA)U, written with arguments
/// A^{l_i} U(t) and the power of i pulled out front.
Mat gateaux_exponential(const CircleFunction& f, const UnitaryMatrix& u,
                        const Mat& hermitian, double t, int k,
                        const CalculusLimits& limits = {});

/// Central finite-difference estimate of the k-th derivative of f(U(t)),
/// k <= 4, Richardson-extrapolated over steps h and h/2. The step is scaled
/// down by the path's step_scale.
Mat finite_difference_oracle(const UnitaryPath& path, const CircleFunction& f,
                             double t, int k, double h = 1e-3,
                             const CalculusLimits& limits = {});

/// Matrix-valued path with its exact derivative, for product-rule checks.
struct MatrixPath {
  std::function<Mat(double)> value;
  std::function<Mat(double)> derivative;
};

/// Derivative of t -> Gamma at (U(t),..,U(t)) of f[m] applied to
/// (V1(t),..,Vm(t)): one term per differentiated argument plus one order-m+1
/// term per insertion slot for U~'(t). Compared against a central
/// finite-difference derivative.
CheckReport product_rule_check(const UnitaryPath& path, const CircleFunction& f,
                               std::span<const MatrixPath> arg_paths, double t,
                               double p, double tol = 1e-5,
                               const CalculusLimits& limits = {});

/// Stability of the order-n integral under perturbing every unitary along
/// its own Hermitian direction: records
/// |Gamma(V) - Gamma(U)|_p / prod |X_i|_{np} across the delta sweep. Passes
/// when the sequence decreases and ends well below its start.
CheckReport moi_continuity_check(const CircleFunction& f,
                                 std::span<const UnitaryMatrix> unitaries,
                                 std::span<const Mat> directions,
                                 std::span<const Mat> args, double p,
                                 std::span<const double> delta_sweep);

}  // namespace opint
