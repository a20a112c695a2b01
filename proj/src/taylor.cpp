#include "opint/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opint {

namespace {

double factorial_d(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// U~(t) - sum_{k=1}^{l-1} U~^(k)(0)/k!
Mat centered_path_remainder(const UnitaryPath& path, int l, double t) {
  Mat r = path.tilde(t);
  for (int k = 1; k < l; ++k)
    r -= path.tilde_derivative(k, 0.0) / factorial_d(k);
  return r;
}

}  // namespace

Mat remainder_direct(const UnitaryPath& path, const CircleFunction& f, double t,
                     int n, const CalculusLimits& limits) {
  if (n < 1) throw std::invalid_argument("expansion order must be >= 1");
  if (f.smoothness() < n)
    throw std::domain_error("function lacks the derivatives this order requires");
  Mat r = func_calculus(f, path.at(t)) - func_calculus(f, path.at(0.0));
  for (int k = 1; k < n; ++k)
    r -= gateaux_derivative(path, f, 0.0, k, limits) / factorial_d(k);
  return r;
}

Mat remainder_moi(const UnitaryPath& path, const CircleFunction& f, double t,
                  int n, const CalculusLimits& limits) {
  if (n < 1) throw std::invalid_argument("expansion order must be >= 1");
  if (f.smoothness() < n)
    throw std::domain_error("function lacks the derivatives this order requires");
  if (path.smoothness() < n)
    throw std::domain_error("path lacks the derivatives this order requires");

  const UnitaryMatrix ut = path.at(t);
  const UnitaryMatrix u0 = path.at(0.0);
  const MoiLimits moi_lim{.max_arity = n + 1, .max_dim = path.dim(),
                          .override_caps = limits.override_caps};
  Mat acc = Mat::Zero(path.dim(), path.dim());
  for (const auto& comp : enumerate_compositions(n)) {
    const int m = static_cast<int>(comp.parts.size());
    std::vector<Mat> args;
    args.reserve(m);
    args.push_back(centered_path_remainder(path, comp.parts[0], t));
    for (int j = 1; j < m; ++j)
      args.push_back(path.tilde_derivative(comp.parts[j], 0.0) /
                     factorial_d(comp.parts[j]));
    std::vector<UnitaryMatrix> us;
    us.reserve(m + 1);
    us.push_back(ut);
    for (int j = 0; j < m; ++j) us.push_back(u0);
    acc += moi_apply(MoiSymbol::divided_difference(f, m), us, args, moi_lim);
  }
  return acc;
}

Mat remainder_exponential(const CircleFunction& f, const UnitaryMatrix& u,
                          const Mat& hermitian, int n,
                          const CalculusLimits& limits) {
  if (n < 1) throw std::invalid_argument("expansion order must be >= 1");
  if (f.smoothness() < n)
    throw std::domain_error("function lacks the derivatives this order requires");
  if (!is_hermitian(hermitian))
    throw std::invalid_argument("generator is not Hermitian within tolerance");

  const UnitaryMatrix u1(hermitian_exp_i(hermitian) * u.matrix());
  std::vector<Mat> powers{u.matrix()};  // powers[l] = (iA)^l U
  const cplx i(0.0, 1.0);
  for (int l = 1; l <= n; ++l) powers.push_back(i * (hermitian * powers.back()));

  const MoiLimits moi_lim{.max_arity = n + 1, .max_dim = u.dim(),
                          .override_caps = limits.override_caps};
  Mat acc = Mat::Zero(u.dim(), u.dim());
  for (const auto& comp : enumerate_compositions(n)) {
    const int m = static_cast<int>(comp.parts.size());
    std::vector<Mat> args;
    args.reserve(m);
    args.push_back(exp_i_tail(hermitian, comp.parts[0]) * u.matrix());
    for (int j = 1; j < m; ++j)
      args.push_back(powers[comp.parts[j]] / factorial_d(comp.parts[j]));
    std::vector<UnitaryMatrix> us;
    us.reserve(m + 1);
    us.push_back(u1);
    for (int j = 0; j < m; ++j) us.push_back(u);
    acc += moi_apply(MoiSymbol::divided_difference(f, m), us, args, moi_lim);
  }
  return acc;
}

std::vector<double> default_scale_grid() {
  std::vector<double> scales;
  for (int q = -14; q <= 0; ++q) scales.push_back(std::pow(10.0, q / 4.0));
  return scales;
}

RemainderReport estimate_sweep(const CircleFunction& f, const UnitaryMatrix& u,
                               const Mat& hermitian, int n, double p,
                               std::span<const double> scales,
                               const CalculusLimits& limits) {
  if (!(n > 1) || !(double(n) < p))
    throw std::invalid_argument("the estimate requires 1 < n < p");
  if (scales.size() < 4)
    throw std::invalid_argument("the sweep needs at least four scales");

  double f_mass = 0.0;
  for (int m = 1; m <= n; ++m) f_mass += sup_norm(f.derivative(m));

  RemainderReport rep;
  rep.order = n;
  rep.p = p;
  rep.p_effective = p / n;
  rep.quasi_norm = rep.p_effective < 1.0;

  std::vector<double> xs(scales.begin(), scales.end());
  std::sort(xs.begin(), xs.end());
  std::vector<double> norms;
  rep.estimate_ratio = 0.0;
  for (double s : xs) {
    const Mat r = remainder_exponential(f, u, Mat(s * hermitian), n, limits);
    const double rn = schatten_norm(r, rep.p_effective);
    norms.push_back(rn);
    const double denom =
        f_mass * std::pow(schatten_norm(Mat(s * hermitian), p), n);
    if (denom > 0.0)
      rep.estimate_ratio = std::max(rep.estimate_ratio, rn / denom);
  }
  rep.remainder_norm = norms.back();

  const std::span<const double> x_low(xs.data(), 4);
  const std::span<const double> y_low(norms.data(), 4);
  rep.scaling_slope = fit_loglog_slope(x_low, y_low);

  const double dn =
      schatten_norm(gateaux_exponential(f, u, hermitian, 0.0, n, limits), p);
  const double dn_denom = f_mass * std::pow(schatten_norm(hermitian, p), n);
  rep.derivative_ratio = dn_denom > 0.0 ? dn / dn_denom : 0.0;

  rep.pass = std::isfinite(rep.estimate_ratio) &&
             std::abs(rep.scaling_slope - double(n)) <= 0.1;
  return rep;
}

}  // namespace opint
