#include "opint/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace opint {

namespace {

constexpr int kMaxCompositionOrder = 8;

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<Composition> enumerate_compositions(int k) {
  if (k < 1 || k > kMaxCompositionOrder)
    throw std::invalid_argument("composition order out of range");
  std::vector<Composition> out;
  std::vector<int> parts;
  const std::uint64_t kfac = factorial(k);
  std::function<void(int)> rec = [&](int rest) {
    if (rest == 0) {
      std::uint64_t denom = 1;
      for (int l : parts) denom *= factorial(l);
      out.push_back({parts, kfac / denom});
      return;
    }
    for (int l = 1; l <= rest; ++l) {
      parts.push_back(l);
      rec(rest - l);
      parts.pop_back();
    }
  };
  rec(k);
  return out;
}

UnitaryPath UnitaryPath::exponential(Mat hermitian, UnitaryMatrix base) {
  if (hermitian.rows() != base.dim() || hermitian.cols() != base.dim())
    throw std::invalid_argument("generator and base unitary sizes differ");
  if (!is_hermitian(hermitian))
    throw std::invalid_argument("generator is not Hermitian within tolerance");
  UnitaryPath p;
  p.exponential_ = true;
  p.dim_ = base.dim();
  p.gen_ = std::move(hermitian);
  Eigen::SelfAdjointEigenSolver<Mat> es(p.gen_);
  p.eigvals_ = es.eigenvalues();
  p.eigvecs_ = es.eigenvectors();
  p.base_ = base.matrix();
  p.step_scale_ = std::max(1.0, operator_norm(p.gen_));
  return p;
}

UnitaryPath UnitaryPath::general(std::function<Mat(double)> value,
                                 std::vector<std::function<Mat(double)>> derivatives,
                                 double step_scale) {
  if (!value) throw std::invalid_argument("path without a value closure");
  UnitaryPath p;
  p.exponential_ = false;
  p.value_ = std::move(value);
  p.derivs_ = std::move(derivatives);
  p.value0_ = p.value_(0.0);
  p.dim_ = static_cast<int>(p.value0_.rows());
  p.step_scale_ = std::max(1.0, step_scale);
  return p;
}

Mat UnitaryPath::value(double t) const {
  if (!exponential_) return value_(t);
  Vec phases(eigvals_.size());
  for (Eigen::Index j = 0; j < eigvals_.size(); ++j)
    phases(j) = circle_point(t * eigvals_(j));
  return eigvecs_ * phases.asDiagonal() * eigvecs_.adjoint() * base_;
}

UnitaryMatrix UnitaryPath::at(double t) const { return UnitaryMatrix(value(t)); }

Mat UnitaryPath::tilde(double t) const {
  return value(t) - (exponential_ ? base_ : value0_);
}

Mat UnitaryPath::tilde_derivative(int order, double t) const {
  if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
  if (exponential_) {
    // d^l/dt^l exp(itA) U0 = (iA)^l exp(itA) U0
    Mat acc = value(t);
    const cplx i(0.0, 1.0);
    for (int l = 0; l < order; ++l) acc = i * (gen_ * acc);
    return acc;
  }
  if (order > static_cast<int>(derivs_.size()))
    throw std::domain_error("derivative order exceeds the path's smoothness");
  return derivs_[order - 1](t);
}

int UnitaryPath::smoothness() const {
  if (exponential_) return std::numeric_limits<int>::max();
  return static_cast<int>(derivs_.size());
}

const Mat& UnitaryPath::generator() const {
  if (!exponential_)
    throw std::logic_error("general path has no exponential generator");
  return gen_;
}

Mat frechet_derivative(const CircleFunction& f, const UnitaryMatrix& u,
                       std::span<const Mat> args, const CalculusLimits& limits) {
  const int k = static_cast<int>(args.size());
  if (k < 1) throw std::invalid_argument("derivative order must be >= 1");
  if (!limits.override_caps) {
    if (k > limits.max_order)
      throw std::invalid_argument("derivative order above the configured cap");
    if (u.dim() > limits.max_dim)
      throw std::invalid_argument("dimension above the configured cap");
  }
  if (f.smoothness() < k)
    throw std::domain_error("function lacks the derivatives this order requires");

  const std::vector<UnitaryMatrix> us(k + 1, u);
  const MoiSymbol sym = MoiSymbol::divided_difference(f, k);
  const MoiLimits moi_lim{.max_arity = k + 1, .max_dim = u.dim(),
                          .override_caps = limits.override_caps};

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Mat acc = Mat::Zero(u.dim(), u.dim());
  do {
    std::vector<Mat> permuted;
    permuted.reserve(k);
    for (int i : perm) permuted.push_back(args[i]);
    acc += moi_apply(sym, us, permuted, moi_lim);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

CheckReport frechet_residual_check(const CircleFunction& f, const UnitaryMatrix& u,
                                   const Mat& direction, std::span<const Mat> args,
                                   double p, std::span<const double> eps_sweep,
                                   double min_slope, const CalculusLimits& limits) {
  const int k = static_cast<int>(args.size()) + 1;
  CheckReport rep;
  rep.identity = "frechet-expansion-order-" + std::to_string(k);
  rep.p = p;

  auto lower_derivative = [&](const UnitaryMatrix& w) -> Mat {
    if (k == 1) return func_calculus(f, w);
    return frechet_derivative(f, w, args, limits);
  };

  const Mat base_lower = lower_derivative(u);
  std::vector<double> increments, residuals;
  double scale = 1.0 + schatten_norm(base_lower, p);
  for (double eps : eps_sweep) {
    const UnitaryMatrix v(hermitian_exp_i(direction, eps) * u.matrix());
    const Mat increment = v.matrix() - u.matrix();
    std::vector<Mat> full_args(args.begin(), args.end());
    full_args.push_back(increment);
    const Mat linear = frechet_derivative(f, u, full_args, limits);
    const Mat residual = lower_derivative(v) - base_lower - linear;
    increments.push_back(schatten_norm(increment, p));
    residuals.push_back(schatten_norm(residual, p));
  }
  rep.sequence = residuals;
  rep.residual_abs = residuals.back();
  rep.residual_rel = rep.residual_abs / scale;

  const double floor = 1e-13 * scale;
  const double slope = fit_loglog_slope(increments, residuals, floor);
  if (std::isnan(slope)) {
    // residuals at numerical zero across the sweep: the expansion is exact
    bool all_dead = true;
    for (double r : residuals) all_dead = all_dead && r <= floor;
    rep.pass = all_dead;
  } else {
    rep.pass = slope >= min_slope;
  }
  return rep;
}

Mat gateaux_derivative(const UnitaryPath& path, const CircleFunction& f, double t,
                       int k, const CalculusLimits& limits) {
  if (k < 1) throw std::invalid_argument("derivative order must be >= 1");
  if (!limits.override_caps && k > limits.max_order)
    throw std::invalid_argument("derivative order above the configured cap");
  if (!limits.override_caps && path.dim() > limits.max_dim)
    throw std::invalid_argument("dimension above the configured cap");
  if (f.smoothness() < k)
    throw std::domain_error("function lacks the derivatives this order requires");
  if (path.smoothness() < k)
    throw std::domain_error("path lacks the derivatives this order requires");

  const UnitaryMatrix ut = path.at(t);
  const MoiLimits moi_lim{.max_arity = k + 1, .max_dim = path.dim(),
                          .override_caps = limits.override_caps};
  Mat acc = Mat::Zero(path.dim(), path.dim());
  for (const auto& comp : enumerate_compositions(k)) {
    const int m = static_cast<int>(comp.parts.size());
    std::vector<Mat> args;
    args.reserve(m);
    for (int l : comp.parts) args.push_back(path.tilde_derivative(l, t));
    const std::vector<UnitaryMatrix> us(m + 1, ut);
    acc += double(comp.weight) *
           moi_apply(MoiSymbol::divided_difference(f, m), us, args, moi_lim);
  }
  return acc;
}

Mat gateaux_exponential(const CircleFunction& f, const UnitaryMatrix& u,
                        const Mat& hermitian, double t, int k,
                        const CalculusLimits& limits) {
  if (k < 1) throw std::invalid_argument("derivative order must be >= 1");
  if (!limits.override_caps && k > limits.max_order)
    throw std::invalid_argument("derivative order above the configured cap");
  if (!limits.override_caps && u.dim() > limits.max_dim)
    throw std::invalid_argument("dimension above the configured cap");
  if (!is_hermitian(hermitian))
    throw std::invalid_argument("generator is not Hermitian within tolerance");
  if (f.smoothness() < k)
    throw std::domain_error("function lacks the derivatives this order requires");

  const UnitaryMatrix ut(hermitian_exp_i(hermitian, t) * u.matrix());
  std::vector<Mat> powers{ut.matrix()};  // powers[l] = A^l U(t)
  for (int l = 1; l <= k; ++l) powers.push_back(hermitian * powers.back());

  const MoiLimits moi_lim{.max_arity = k + 1, .max_dim = u.dim(),
                          .override_caps = limits.override_caps};
  Mat acc = Mat::Zero(u.dim(), u.dim());
  for (const auto& comp : enumerate_compositions(k)) {
    const int m = static_cast<int>(comp.parts.size());
    std::vector<Mat> args;
    args.reserve(m);
    for (int l : comp.parts) args.push_back(powers[l]);
    const std::vector<UnitaryMatrix> us(m + 1, ut);
    acc += double(comp.weight) *
           moi_apply(MoiSymbol::divided_difference(f, m), us, args, moi_lim);
  }
  cplx ik(1.0, 0.0);
  for (int l = 0; l < k % 4; ++l) ik *= cplx(0.0, 1.0);
  return ik * acc;
}

Mat finite_difference_oracle(const UnitaryPath& path, const CircleFunction& f,
                             double t, int k, double h,
                             const CalculusLimits& limits) {
  if (k < 1 || k > 4)
    throw std::invalid_argument("stencils cover derivative orders 1 to 4");
  if (!limits.override_caps && path.dim() > limits.max_dim)
    throw std::invalid_argument("dimension above the configured cap");
  const double step = h / path.step_scale();
  if (step < 1e-8) throw std::invalid_argument("step underflow");

  auto phi = [&](double s) { return func_calculus(f, path.at(s)); };

  // second-order central stencils; offsets paired with weights
  auto stencil = [&](double hh) -> Mat {
    switch (k) {
      case 1:
        return (phi(t + hh) - phi(t - hh)) / (2.0 * hh);
      case 2:
        return (phi(t + hh) - 2.0 * phi(t) + phi(t - hh)) / (hh * hh);
      case 3:
        return (phi(t + 2 * hh) - 2.0 * phi(t + hh) + 2.0 * phi(t - hh) -
                phi(t - 2 * hh)) /
               (2.0 * hh * hh * hh);
      default:
        return (phi(t + 2 * hh) - 4.0 * phi(t + hh) + 6.0 * phi(t) -
                4.0 * phi(t - hh) + phi(t - 2 * hh)) /
               (hh * hh * hh * hh);
    }
  };
  // one Richardson pass removes the h^2 term
  return (4.0 * stencil(step / 2.0) - stencil(step)) / 3.0;
}

CheckReport product_rule_check(const UnitaryPath& path, const CircleFunction& f,
                               std::span<const MatrixPath> arg_paths, double t,
                               double p, double tol, const CalculusLimits& limits) {
  const int m = static_cast<int>(arg_paths.size());
  if (m < 1) throw std::invalid_argument("need at least one argument path");
  if (f.smoothness() < m + 1)
    throw std::domain_error("function lacks the derivatives this order requires");
  const MoiLimits moi_lim{.max_arity = m + 2, .max_dim = path.dim(),
                          .override_caps = limits.override_caps};

  const MoiSymbol sym_m = MoiSymbol::divided_difference(f, m);
  auto psi = [&](double s) {
    const UnitaryMatrix us_val = path.at(s);
    const std::vector<UnitaryMatrix> us(m + 1, us_val);
    std::vector<Mat> args;
    args.reserve(m);
    for (const auto& ap : arg_paths) args.push_back(ap.value(s));
    return moi_apply(sym_m, us, args, moi_lim);
  };

  const double h = 1e-3 / path.step_scale();
  auto central = [&](double hh) -> Mat {
    return (psi(t + hh) - psi(t - hh)) / (2.0 * hh);
  };
  const Mat fd = (4.0 * central(h / 2.0) - central(h)) / 3.0;

  const UnitaryMatrix ut = path.at(t);
  const std::vector<UnitaryMatrix> us(m + 1, ut);
  std::vector<Mat> vals, dervs;
  for (const auto& ap : arg_paths) {
    vals.push_back(ap.value(t));
    dervs.push_back(ap.derivative(t));
  }

  Mat rhs = Mat::Zero(path.dim(), path.dim());
  for (int i = 0; i < m; ++i) {
    std::vector<Mat> args = vals;
    args[i] = dervs[i];
    rhs += moi_apply(sym_m, us, args, moi_lim);
  }
  const Mat velocity = path.tilde_derivative(1, t);
  const MoiSymbol sym_m1 = MoiSymbol::divided_difference(f, m + 1);
  const std::vector<UnitaryMatrix> us_high(m + 2, ut);
  for (int slot = 0; slot <= m; ++slot) {
    std::vector<Mat> args;
    args.reserve(m + 1);
    for (int i = 0; i < slot; ++i) args.push_back(vals[i]);
    args.push_back(velocity);
    for (int i = slot; i < m; ++i) args.push_back(vals[i]);
    rhs += moi_apply(sym_m1, us_high, args, moi_lim);
  }

  CheckReport rep;
  rep.identity = "integral-product-rule";
  rep.p = p;
  rep.residual_abs = schatten_norm(Mat(rhs - fd), p);
  rep.residual_rel = rep.residual_abs / (1.0 + schatten_norm(fd, p));
  rep.pass = rep.residual_rel <= tol;
  return rep;
}

CheckReport moi_continuity_check(const CircleFunction& f,
                                 std::span<const UnitaryMatrix> unitaries,
                                 std::span<const Mat> directions,
                                 std::span<const Mat> args, double p,
                                 std::span<const double> delta_sweep) {
  const int n = static_cast<int>(args.size());
  if (unitaries.size() != directions.size())
    throw std::invalid_argument("need one direction per unitary");
  if (static_cast<int>(unitaries.size()) != n + 1)
    throw std::invalid_argument("need n+1 unitaries for an order-n integral");

  const MoiSymbol sym = MoiSymbol::divided_difference(f, n);
  const Mat base = moi_apply(sym, unitaries, args);
  double denom = 1.0;
  for (const Mat& x : args) denom *= schatten_norm(x, double(n) * p);

  CheckReport rep;
  rep.identity = "moi-continuity";
  rep.p = p;
  for (double delta : delta_sweep) {
    std::vector<UnitaryMatrix> vs;
    vs.reserve(unitaries.size());
    for (std::size_t i = 0; i < unitaries.size(); ++i)
      vs.emplace_back(hermitian_exp_i(directions[i], delta) *
                      unitaries[i].matrix());
    const double diff = schatten_norm(Mat(moi_apply(sym, vs, args) - base), p);
    rep.sequence.push_back(diff / denom);
  }
  rep.residual_abs = rep.sequence.back();
  rep.residual_rel = rep.sequence.back();
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < rep.sequence.size(); ++i)
    if (rep.sequence[i + 1] >= rep.sequence[i] && rep.sequence[i + 1] > 1e-14)
      decreasing = false;
  rep.pass = decreasing &&
             rep.sequence.back() <= std::max(1e-2 * rep.sequence.front(), 1e-13);
  return rep;
}

}  // namespace opint
