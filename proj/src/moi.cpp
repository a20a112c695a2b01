#include "opint/moi.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace opint {

MoiSymbol MoiSymbol::divided_difference(CircleFunction f, int order) {
  if (order < 0) throw std::invalid_argument("symbol order must be >= 0");
  if (f.smoothness() < order)
    throw std::domain_error("function lacks the derivatives this order requires");
  if (f.is_trig_poly()) {
    // coefficient list frozen once; evaluation is the exact monomial
    // expansion, stable at coincident points
    std::vector<std::pair<int, cplx>> coeffs(f.poly().coeffs().begin(),
                                             f.poly().coeffs().end());
    return MoiSymbol(order + 1, [coeffs, order](std::span<const cplx> xs) {
      cplx acc = 0.0;
      for (const auto& [m, c] : coeffs) acc += c * monomial_divdiff(m, xs);
      return acc;
    });
  }
  return MoiSymbol(order + 1, [f = std::move(f), order](std::span<const cplx> xs) {
    return opint::divided_difference(
        f, NodeTuple(std::vector<cplx>(xs.begin(), xs.end())), order);
  });
}

MoiSymbol MoiSymbol::tensor(std::vector<CircleFunction> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor symbol needs a factor");
  const int n = static_cast<int>(factors.size());
  return MoiSymbol(n, [factors = std::move(factors)](std::span<const cplx> xs) {
    cplx acc = 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc *= factors[i].eval(xs[i]);
    return acc;
  });
}

MoiSymbol MoiSymbol::raw(int arity, std::function<cplx(std::span<const cplx>)> fn) {
  if (arity < 1) throw std::invalid_argument("symbol arity must be >= 1");
  if (!fn) throw std::invalid_argument("raw symbol without an evaluator");
  return MoiSymbol(arity, std::move(fn));
}

cplx MoiSymbol::eval(std::span<const cplx> lambdas) const {
  if (static_cast<int>(lambdas.size()) != arity_)
    throw std::invalid_argument("symbol arity mismatch");
  return eval_(lambdas);
}

namespace {

struct ClusterView {
  std::vector<std::vector<int>> columns;  // eigenvector columns per cluster
  const std::vector<cplx>* values;
};

ClusterView view_of(const UnitaryMatrix& u) {
  ClusterView v;
  v.values = &u.cluster_values();
  v.columns.resize(u.cluster_count());
  const auto& of_col = u.cluster_of_column();
  for (int j = 0; j < u.dim(); ++j) v.columns[of_col[j]].push_back(j);
  return v;
}

}  // namespace

Mat moi_apply(const MoiSymbol& symbol, std::span<const UnitaryMatrix> unitaries,
              std::span<const Mat> args, const MoiLimits& limits) {
  const int n = static_cast<int>(unitaries.size());
  if (n == 0) throw std::invalid_argument("integral needs at least one unitary");
  if (symbol.arity() != n)
    throw std::invalid_argument("symbol arity does not match the unitary count");
  if (static_cast<int>(args.size()) != n - 1)
    throw std::invalid_argument("argument count must be one less than the unitaries");
  const int d = unitaries[0].dim();
  for (const auto& u : unitaries)
    if (u.dim() != d) throw std::invalid_argument("unitary sizes differ");
  for (const auto& k : args)
    if (k.rows() != d || k.cols() != d)
      throw std::invalid_argument("argument sizes differ from the unitaries");
  if (!limits.override_caps) {
    if (n > limits.max_arity)
      throw std::invalid_argument("integral order above the configured cap");
    if (d > limits.max_dim)
      throw std::invalid_argument("dimension above the configured cap");
  }

  // everything happens in the eigenbases: with K~_j = Q_j* K_j Q_{j+1} the
  // spectral sum becomes a cluster-blocked contraction of the K~ chain
  // against the symbol values
  std::vector<ClusterView> views;
  views.reserve(n);
  for (const auto& u : unitaries) views.push_back(view_of(u));
  std::vector<Mat> kt(n - 1);
  for (int j = 0; j + 1 < n; ++j)
    kt[j] = unitaries[j].eigenvectors().adjoint() * args[j] *
            unitaries[j + 1].eigenvectors();

  Mat m_basis = Mat::Zero(d, d);
  std::vector<cplx> lambdas(n);

  // depth-first over cluster tuples, carrying the partial block product;
  // enumeration order is fixed, so the accumulation is sequential and
  // deterministic
  std::vector<int> choice(n, 0);
  auto block = [&](int j, int ca, int cb) {
    const auto& rows = views[j].columns[ca];
    const auto& cols = views[j + 1].columns[cb];
    Mat b(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) b(r, c) = kt[j](rows[r], cols[c]);
    return b;
  };

  std::function<void(int, const Mat&)> descend = [&](int depth, const Mat& partial) {
    if (depth == n - 1) {
      const cplx w = symbol.eval(lambdas);
      if (w == cplx(0.0, 0.0)) return;
      const auto& rows = views[0].columns[choice[0]];
      const auto& cols = views[n - 1].columns[choice[n - 1]];
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
          m_basis(rows[r], cols[c]) += w * partial(r, c);
      return;
    }
    const int next = depth + 1;
    for (int c = 0; c < static_cast<int>(views[next].columns.size()); ++c) {
      choice[next] = c;
      lambdas[next] = (*views[next].values)[c];
      descend(next, partial * block(depth, choice[depth], c));
    }
  };

  for (int c0 = 0; c0 < static_cast<int>(views[0].columns.size()); ++c0) {
    choice[0] = c0;
    lambdas[0] = (*views[0].values)[c0];
    const Mat seed = Mat::Identity(views[0].columns[c0].size(),
                                   views[0].columns[c0].size());
    descend(0, seed);
  }

  return unitaries[0].eigenvectors() * m_basis *
         unitaries[n - 1].eigenvectors().adjoint();
}

namespace {

CheckReport relative_residual_report(std::string identity, const Mat& lhs,
                                     const Mat& rhs, double p, double tol) {
  CheckReport rep;
  rep.identity = std::move(identity);
  rep.p = p;
  const double ref = schatten_norm(lhs, p);
  rep.residual_abs = schatten_norm(Mat(lhs - rhs), p);
  rep.residual_rel = rep.residual_abs / (1.0 + ref);
  rep.pass = rep.residual_rel <= tol;
  return rep;
}

}  // namespace

CheckReport first_order_identity_check(const CircleFunction& f,
                                       const UnitaryMatrix& u,
                                       const UnitaryMatrix& v, double p,
                                       double tol) {
  const Mat lhs = func_calculus(f, u) - func_calculus(f, v);
  const std::vector<UnitaryMatrix> us{u, v};
  const std::vector<Mat> args{u.matrix() - v.matrix()};
  const Mat rhs = moi_apply(MoiSymbol::divided_difference(f, 1), us, args);
  return relative_residual_report("first-order-increment", lhs, rhs, p, tol);
}

CheckReport perturbation_insert_check(const CircleFunction& f,
                                      std::span<const UnitaryMatrix> aux,
                                      const UnitaryMatrix& u,
                                      const UnitaryMatrix& v, int slot,
                                      std::span<const Mat> args, double p,
                                      double tol) {
  const int n = static_cast<int>(args.size()) + 1;
  if (static_cast<int>(aux.size()) != n - 1)
    throw std::invalid_argument("need n-1 shared unitaries for an order-n check");
  if (slot < 1 || slot > n) throw std::invalid_argument("slot out of range");

  auto with_inserted = [&](const UnitaryMatrix& w) {
    std::vector<UnitaryMatrix> us;
    us.reserve(n);
    for (int i = 0; i < slot - 1; ++i) us.push_back(aux[i]);
    us.push_back(w);
    for (int i = slot - 1; i < n - 1; ++i) us.push_back(aux[i]);
    return us;
  };

  const MoiSymbol low = MoiSymbol::divided_difference(f, n - 1);
  const Mat lhs = moi_apply(low, with_inserted(u), args) -
                  moi_apply(low, with_inserted(v), args);

  std::vector<UnitaryMatrix> us_high;
  us_high.reserve(n + 1);
  for (int i = 0; i < slot - 1; ++i) us_high.push_back(aux[i]);
  us_high.push_back(u);
  us_high.push_back(v);
  for (int i = slot - 1; i < n - 1; ++i) us_high.push_back(aux[i]);

  std::vector<Mat> args_high;
  args_high.reserve(n);
  for (int i = 0; i < slot - 1; ++i) args_high.push_back(args[i]);
  args_high.push_back(u.matrix() - v.matrix());
  for (int i = slot - 1; i < n - 1; ++i) args_high.push_back(args[i]);

  const Mat rhs = moi_apply(MoiSymbol::divided_difference(f, n), us_high, args_high);
  return relative_residual_report("perturbation-insert", lhs, rhs, p, tol);
}

CheckReport telescoping_check(const CircleFunction& f, const UnitaryMatrix& u,
                              const UnitaryMatrix& v, int k,
                              std::span<const Mat> args, double p, double tol) {
  const int n = static_cast<int>(args.size()) + 1;
  if (k < 1 || k > n) throw std::invalid_argument("leading count out of range");

  auto repeated = [&](int u_count, int total) {
    std::vector<UnitaryMatrix> us;
    us.reserve(total);
    for (int i = 0; i < u_count; ++i) us.push_back(u);
    for (int i = u_count; i < total; ++i) us.push_back(v);
    return us;
  };

  const MoiSymbol low = MoiSymbol::divided_difference(f, n - 1);
  const Mat lhs =
      moi_apply(low, repeated(k, n), args) - moi_apply(low, repeated(0, n), args);

  const MoiSymbol high = MoiSymbol::divided_difference(f, n);
  Mat rhs = Mat::Zero(u.dim(), u.dim());
  for (int i = 1; i <= k; ++i) {
    std::vector<Mat> args_high;
    args_high.reserve(n);
    for (int j = 0; j < i - 1; ++j) args_high.push_back(args[j]);
    args_high.push_back(u.matrix() - v.matrix());
    for (int j = i - 1; j < n - 1; ++j) args_high.push_back(args[j]);
    rhs += moi_apply(high, repeated(i, n + 1), args_high);
  }
  return relative_residual_report("telescoping", lhs, rhs, p, tol);
}

CheckReport sot_convergence_check(const MoiSymbol& symbol,
                                  std::span<const UnitaryMatrix> unitaries,
                                  const Mat& direction, std::span<const Mat> args,
                                  int max_j, double threshold) {
  CheckReport rep;
  rep.identity = "moi-strong-convergence";
  rep.p = 2.0;
  const Mat limit = moi_apply(symbol, unitaries, args);
  const double scale = schatten_norm(limit, 2.0);
  for (int j = 0; j <= max_j; ++j) {
    const Mat step = hermitian_exp_i(direction, std::pow(0.5, j));
    std::vector<UnitaryMatrix> perturbed;
    perturbed.reserve(unitaries.size());
    for (const auto& u : unitaries) perturbed.emplace_back(step * u.matrix());
    rep.sequence.push_back(
        schatten_norm(Mat(moi_apply(symbol, perturbed, args) - limit), 2.0));
  }
  rep.residual_abs = rep.sequence.back();
  rep.residual_rel = rep.residual_abs / (1.0 + scale);
  bool monotone = true;
  for (std::size_t j = 5; j + 1 < rep.sequence.size(); ++j)
    if (rep.sequence[j + 1] > rep.sequence[j] && rep.sequence[j + 1] > 1e-14)
      monotone = false;
  rep.pass = monotone && rep.residual_abs < threshold;
  return rep;
}

CheckReport bound_ratio_recorder(const CircleFunction& f,
                                 std::span<const UnitaryMatrix> unitaries,
                                 std::span<const Mat> args, double p,
                                 std::span<const double> p_split) {
  const int n = static_cast<int>(args.size());
  if (p_split.size() != args.size())
    throw std::invalid_argument("need one split exponent per argument");
  double inv = 0.0;
  for (double pi : p_split) {
    if (!(pi > 0.0)) throw std::invalid_argument("split exponents must be positive");
    inv += 1.0 / pi;
  }
  if (std::abs(inv - 1.0 / p) > 1e-9)
    throw std::invalid_argument("split exponents do not satisfy the Hoelder relation");

  CheckReport rep;
  rep.identity = "moi-bound-ratio";
  rep.p = p;
  const Mat value =
      moi_apply(MoiSymbol::divided_difference(f, n), unitaries, args);
  rep.residual_abs = schatten_norm(value, p);
  double denom = sup_norm(f.derivative(n));
  for (std::size_t i = 0; i < args.size(); ++i)
    denom *= schatten_norm(args[i], p_split[i]);
  rep.residual_rel = denom > 0.0 ? rep.residual_abs / denom
                                 : (rep.residual_abs > 0.0 ? HUGE_VAL : 0.0);
  rep.pass = std::isfinite(rep.residual_rel);
  return rep;
}

}  // namespace opint
