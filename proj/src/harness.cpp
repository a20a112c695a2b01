#include "opint/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <set>

namespace opint {

double InstanceGenerator::uniform() {
  // 53 significant bits straight from the engine
  return double(rng_() >> 11) * 0x1.0p-53;
}

double InstanceGenerator::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted away from zero so the log is finite
  const double u1 = (double(rng_() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = double(rng_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cplx InstanceGenerator::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return cplx(re, im);
}

Mat InstanceGenerator::ginibre(int d) {
  Mat g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = complex_gaussian();
  return g;
}

Mat InstanceGenerator::hermitian(int d) {
  const Mat g = ginibre(d);
  return 0.5 * (g + g.adjoint());
}

Mat InstanceGenerator::hermitian_unit(int d) {
  Mat a = hermitian(d);
  const double norm = operator_norm(a);
  if (norm > 0.0) a /= norm;
  return a;
}

UnitaryMatrix InstanceGenerator::unitary(int d) {
  const Mat g = ginibre(d);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return UnitaryMatrix(std::move(q));
}

TrigPoly InstanceGenerator::trigpoly(int max_degree) {
  std::map<int, cplx> coeffs;
  for (int m = -max_degree; m <= max_degree; ++m) coeffs[m] = complex_gaussian();
  return TrigPoly(std::move(coeffs));
}

TrigPoly InstanceGenerator::trigpoly_normalized(int max_degree, int weight,
                                                double target) {
  TrigPoly f = trigpoly(max_degree);
  const double mass = f.coeff_mass(weight);
  return mass > 0.0 ? f.scaled(target / mass) : f;
}

UnitaryPath two_factor_path(const Mat& a, const Mat& b, const UnitaryMatrix& base) {
  if (!is_hermitian(a) || !is_hermitian(b))
    throw std::invalid_argument("generators must be Hermitian");
  const Mat u0 = base.matrix();
  const cplx i(0.0, 1.0);
  // bake the generator powers once; (iA)^j and (iB)^j for j <= 4
  std::vector<Mat> pa{Mat::Identity(a.rows(), a.cols())};
  std::vector<Mat> pb{Mat::Identity(a.rows(), a.cols())};
  for (int j = 1; j <= 4; ++j) {
    pa.push_back(i * (a * pa.back()));
    pb.push_back(i * (b * pb.back()));
  }
  auto value = [a, b, u0](double t) -> Mat {
    return hermitian_exp_i(a, t) * hermitian_exp_i(b, t) * u0;
  };
  std::vector<std::function<Mat(double)>> derivs;
  for (int l = 1; l <= 4; ++l) {
    derivs.push_back([a, b, u0, pa, pb, l](double t) {
      // Leibniz on exp(itA) exp(itB)
      Mat acc = Mat::Zero(a.rows(), a.cols());
      double binom = 1.0;
      for (int j = 0; j <= l; ++j) {
        acc += binom * (pa[j] * hermitian_exp_i(a, t)) *
               (pb[l - j] * hermitian_exp_i(b, t));
        binom = binom * double(l - j) / double(j + 1);
      }
      return Mat(acc * u0);
    });
  }
  return UnitaryPath::general(value, std::move(derivs),
                              std::max(1.0, operator_norm(a) + operator_norm(b)));
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

CircleFunction pick_function(const SuiteConfig& cfg, InstanceGenerator& gen) {
  if (cfg.function_override) return CircleFunction(*cfg.function_override);
  return CircleFunction(gen.trigpoly(cfg.degree));
}

void push_timed(SuiteResult& out, std::uint64_t seed,
                std::chrono::steady_clock::time_point t0, CheckReport rep) {
  rep.seed = seed;
  rep.wall_ms = elapsed_ms(t0);
  out.pass = out.pass && rep.pass;
  out.checks.push_back(std::move(rep));
}

void suite_perturbation(const SuiteConfig& cfg, SuiteResult& out) {
  const double tol = cfg.tol.value_or(1e-8);
  const int n = cfg.order;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, trial);
    InstanceGenerator gen(ts);
    const CircleFunction f = pick_function(cfg, gen);
    const UnitaryMatrix u = gen.unitary(cfg.dim);
    const UnitaryMatrix v = gen.unitary(cfg.dim);
    const auto t0 = std::chrono::steady_clock::now();
    if (n <= 1) {
      push_timed(out, ts, t0, first_order_identity_check(f, u, v, cfg.p, tol));
      continue;
    }
    std::vector<UnitaryMatrix> aux;
    std::vector<Mat> args;
    for (int i = 0; i < n - 1; ++i) {
      aux.push_back(gen.unitary(cfg.dim));
      args.push_back(gen.ginibre(cfg.dim));
    }
    for (int slot = 1; slot <= n; ++slot) {
      const auto tslot = std::chrono::steady_clock::now();
      CheckReport rep = perturbation_insert_check(f, aux, u, v, slot, args, cfg.p, tol);
      rep.identity += "-slot-" + std::to_string(slot);
      push_timed(out, ts, tslot, std::move(rep));
    }
  }
}

void suite_telescoping(const SuiteConfig& cfg, SuiteResult& out) {
  const double tol = cfg.tol.value_or(1e-8);
  const int n = cfg.order;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, trial);
    InstanceGenerator gen(ts);
    const CircleFunction f = pick_function(cfg, gen);
    const UnitaryMatrix u = gen.unitary(cfg.dim);
    const UnitaryMatrix v = gen.unitary(cfg.dim);
    std::vector<Mat> args;
    for (int i = 0; i < n - 1; ++i) args.push_back(gen.ginibre(cfg.dim));
    for (int k = 1; k <= n; ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      CheckReport rep = telescoping_check(f, u, v, k, args, cfg.p, tol);
      rep.identity += "-k-" + std::to_string(k);
      push_timed(out, ts, t0, std::move(rep));
    }
  }
}

void suite_frechet(const SuiteConfig& cfg, SuiteResult& out) {
  const double min_slope = cfg.tol.value_or(1.8);
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, trial);
    InstanceGenerator gen(ts);
    const CircleFunction f = pick_function(cfg, gen);
    const UnitaryMatrix u = gen.unitary(cfg.dim);
    const Mat dir = gen.hermitian_unit(cfg.dim);
    std::vector<Mat> args;
    for (int i = 0; i < cfg.order - 1; ++i) args.push_back(gen.ginibre(cfg.dim));
    const auto t0 = std::chrono::steady_clock::now();
    push_timed(out, ts, t0,
               frechet_residual_check(f, u, dir, args, cfg.p, eps, min_slope));
  }
}

void suite_gateaux(const SuiteConfig& cfg, SuiteResult& out) {
  const double tol = cfg.tol.value_or(1e-4);
  const int k = cfg.order;
  const double t = 0.3;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, trial);
    InstanceGenerator gen(ts);
    const CircleFunction f = pick_function(cfg, gen);
    const UnitaryMatrix u = gen.unitary(cfg.dim);
    const Mat a = gen.hermitian_unit(cfg.dim);
    const Mat b = gen.hermitian_unit(cfg.dim);

    auto stencil_entry = [&](const UnitaryPath& path, const char* tag) {
      const auto t0 = std::chrono::steady_clock::now();
      const Mat g = gateaux_derivative(path, f, t, k);
      const Mat fd = finite_difference_oracle(path, f, t, k);
      CheckReport rep;
      rep.identity = std::string("gateaux-vs-stencil-") + tag;
      rep.p = 2.0;
      rep.residual_abs = schatten_norm(Mat(g - fd), 2.0);
      rep.residual_rel = rep.residual_abs / (1.0 + schatten_norm(g, 2.0));
      rep.pass = rep.residual_rel <= tol;
      push_timed(out, ts, t0, std::move(rep));
    };
    const UnitaryPath pe = UnitaryPath::exponential(a, u);
    stencil_entry(pe, "exponential");
    stencil_entry(two_factor_path(a, b, u), "general");

    const auto t0 = std::chrono::steady_clock::now();
    const Mat closed_form = gateaux_exponential(f, u, a, t, k);
    const Mat gen_form = gateaux_derivative(pe, f, t, k);
    CheckReport rep;
    rep.identity = "gateaux-exponential-specialization";
    rep.p = 2.0;
    rep.residual_abs = schatten_norm(Mat(closed_form - gen_form), 2.0);
    rep.residual_rel = rep.residual_abs / (1.0 + schatten_norm(gen_form, 2.0));
    rep.pass = rep.residual_rel <= 1e-10;
    push_timed(out, ts, t0, std::move(rep));
  }
}

void suite_product_rule(const SuiteConfig& cfg, SuiteResult& out) {
  const double tol = cfg.tol.value_or(1e-5);
  const int m = cfg.order;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, trial);
    InstanceGenerator gen(ts);
    const CircleFunction f = pick_function(cfg, gen);
    const UnitaryPath path =
        UnitaryPath::exponential(gen.hermitian_unit(cfg.dim), gen.unitary(cfg.dim));
    std::vector<MatrixPath> arg_paths;
    for (int i = 0; i < m; ++i) {
      const Mat c = gen.ginibre(cfg.dim);
      const Mat d = gen.ginibre(cfg.dim);
      const Mat e = gen.ginibre(cfg.dim);
      arg_paths.push_back(
          {[c, d, e](double s) { return Mat(c + s * d + 0.5 * s * s * e); },
           [d, e](double s) { return Mat(d + s * e); }});
    }
    const auto t0 = std::chrono::steady_clock::now();
    push_timed(out, ts, t0,
               product_rule_check(path, f, arg_paths, 0.4, cfg.p, tol));
  }
}

void suite_taylor(const SuiteConfig& cfg, SuiteResult& out) {
  const double tol = cfg.tol.value_or(1e-8);
  const int n = cfg.order;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, trial);
    InstanceGenerator gen(ts);
    const CircleFunction f = pick_function(cfg, gen);
    const UnitaryMatrix u = gen.unitary(cfg.dim);
    const Mat a = gen.hermitian_unit(cfg.dim);
    const Mat b = gen.hermitian_unit(cfg.dim);

    auto agreement = [&](const char* tag, const Mat& lhs, const Mat& rhs,
                         double bar) {
      const auto t0 = std::chrono::steady_clock::now();
      CheckReport rep;
      rep.identity = std::string("taylor-") + tag;
      rep.p = cfg.p;
      rep.residual_abs = schatten_norm(Mat(lhs - rhs), cfg.p);
      rep.residual_rel = rep.residual_abs / (1.0 + schatten_norm(lhs, cfg.p));
      rep.pass = rep.residual_rel <= bar;
      push_timed(out, ts, t0, std::move(rep));
    };

    const UnitaryPath pe = UnitaryPath::exponential(a, u);
    agreement("direct-vs-moi-exponential", remainder_direct(pe, f, 1.0, n),
              remainder_moi(pe, f, 1.0, n), tol);
    const UnitaryPath pg = two_factor_path(a, b, u);
    agreement("direct-vs-moi-general", remainder_direct(pg, f, 0.7, n),
              remainder_moi(pg, f, 0.7, n), tol);
    agreement("exponential-form", remainder_moi(pe, f, 1.0, n),
              remainder_exponential(f, u, a, n), 1e-10);
  }
}

void suite_estimate(const SuiteConfig& cfg, SuiteResult& out) {
  const int n = cfg.order;
  if (!(n > 1) || !(double(n) < cfg.p))
    throw UsageError("estimate suite requires 1 < order < p");
  const auto scales = default_scale_grid();
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, trial);
    InstanceGenerator gen(ts);
    const CircleFunction f = pick_function(cfg, gen);
    const UnitaryMatrix u = gen.unitary(cfg.dim);
    const Mat a = gen.hermitian_unit(cfg.dim);
    const auto t0 = std::chrono::steady_clock::now();
    const RemainderReport rr = estimate_sweep(f, u, a, n, cfg.p, scales);
    CheckReport rep;
    rep.identity = "taylor-estimate";
    rep.p = cfg.p;
    rep.residual_abs = std::abs(rr.scaling_slope - double(n));
    rep.residual_rel = rep.residual_abs;
    rep.sequence = {rr.scaling_slope, rr.estimate_ratio, rr.derivative_ratio};
    rep.pass = rr.pass;
    push_timed(out, ts, t0, std::move(rep));
  }
}

void suite_convergence(const SuiteConfig& cfg, SuiteResult& out) {
  const int n = std::max(1, cfg.order);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t ts = trial_seed(cfg.seed, trial);
    InstanceGenerator gen(ts);

    // smoothing convergence, entrywise against the unsmoothed symbol
    {
      const TrigPoly f = gen.trigpoly(8);
      std::vector<UnitaryMatrix> us;
      for (int i = 0; i <= n; ++i) us.push_back(gen.unitary(cfg.dim));
      std::vector<Mat> args;
      for (int i = 0; i < n; ++i) args.push_back(gen.ginibre(cfg.dim));
      const auto t0 = std::chrono::steady_clock::now();
      const Mat ref =
          moi_apply(MoiSymbol::divided_difference(CircleFunction(f), n), us, args);
      CheckReport rep;
      rep.identity = "moi-fejer-convergence";
      rep.p = 2.0;
      for (int k : {8, 16, 32, 64, 128}) {
        const TrigPoly fk = fejer_approx(CircleFunction(f), k, 1024);
        const Mat approx = moi_apply(
            MoiSymbol::divided_difference(CircleFunction(fk), n), us, args);
        rep.sequence.push_back(
            (approx - ref).cwiseAbs().maxCoeff());
      }
      rep.residual_abs = rep.sequence.back();
      rep.residual_rel = rep.residual_abs / (1.0 + ref.cwiseAbs().maxCoeff());
      const double floor = 1e-12 * (1.0 + ref.cwiseAbs().maxCoeff());
      bool ok = true;
      for (std::size_t i = 0; i + 1 < rep.sequence.size(); ++i)
        if (rep.sequence[i + 1] > 0.75 * rep.sequence[i] + floor) ok = false;
      rep.pass = ok && rep.sequence.back() <=
                           0.1 * rep.sequence.front() + floor;
      push_timed(out, ts, t0, std::move(rep));
    }

    // strong-convergence surrogate; instances normalized so the final error
    // sits well under the threshold
    {
      const TrigPoly f = gen.trigpoly_normalized(4, n, 0.5);
      std::vector<UnitaryMatrix> us;
      for (int i = 0; i < n; ++i) us.push_back(gen.unitary(cfg.dim));
      std::vector<Mat> args;
      for (int i = 0; i + 1 < n; ++i) {
        Mat k = gen.ginibre(cfg.dim);
        args.push_back(k / schatten_norm(k, 2.0));
      }
      const Mat dir = gen.hermitian_unit(cfg.dim) / 8.0;
      const auto t0 = std::chrono::steady_clock::now();
      push_timed(out, ts, t0,
                 sot_convergence_check(
                     MoiSymbol::divided_difference(CircleFunction(f), n - 1), us,
                     dir, args));
    }

    // norm continuity in the unitaries across a delta sweep
    {
      const TrigPoly f = gen.trigpoly_normalized(5, n + 1, 0.2);
      std::vector<UnitaryMatrix> us;
      std::vector<Mat> dirs;
      for (int i = 0; i <= n; ++i) {
        us.push_back(gen.unitary(cfg.dim));
        dirs.push_back(gen.hermitian_unit(cfg.dim) / 16.0);
      }
      std::vector<Mat> args;
      for (int i = 0; i < n; ++i) {
        Mat x = gen.ginibre(cfg.dim);
        args.push_back(x / schatten_norm(x, double(n) * cfg.p));
      }
      const std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
      const auto t0 = std::chrono::steady_clock::now();
      push_timed(out, ts, t0,
                 moi_continuity_check(CircleFunction(f), us, dirs, args, cfg.p,
                                      deltas));
    }
  }
}

}  // namespace

SuiteResult run_suite_collect(const SuiteConfig& cfg) {
  static const std::set<std::string> known{
      "perturbation", "telescoping", "frechet",  "gateaux",
      "product-rule", "taylor",      "estimate", "convergence"};
  if (!known.count(cfg.suite)) throw UsageError("unknown suite: " + cfg.suite);
  if (cfg.trials < 1) throw UsageError("trials must be >= 1");
  if (cfg.dim < 1 || cfg.dim > 16) throw UsageError("dim must lie in [1, 16]");
  if (cfg.order < 1 || cfg.order > 4) throw UsageError("order must lie in [1, 4]");
  const SchattenExponent validated_p{cfg.p};  // suites run on (1, inf)
  (void)validated_p;
  const bool derivative_suite = cfg.suite == "frechet" || cfg.suite == "gateaux" ||
                                cfg.suite == "product-rule" ||
                                cfg.suite == "taylor" || cfg.suite == "estimate";
  if (derivative_suite && cfg.dim > 8)
    throw UsageError("derivative suites run with dim <= 8");

  SuiteResult out;
  if (cfg.suite == "perturbation") suite_perturbation(cfg, out);
  else if (cfg.suite == "telescoping") suite_telescoping(cfg, out);
  else if (cfg.suite == "frechet") suite_frechet(cfg, out);
  else if (cfg.suite == "gateaux") suite_gateaux(cfg, out);
  else if (cfg.suite == "product-rule") suite_product_rule(cfg, out);
  else if (cfg.suite == "taylor") suite_taylor(cfg, out);
  else if (cfg.suite == "estimate") suite_estimate(cfg, out);
  else suite_convergence(cfg, out);
  return out;
}

json suite_report(const SuiteConfig& cfg, const SuiteResult& result) {
  json config{{"suite", cfg.suite},   {"dim", cfg.dim},
              {"order", cfg.order},   {"p", cfg.p},
              {"seed", cfg.seed},     {"trials", cfg.trials},
              {"degree", cfg.degree},
              {"deterministic_reduce", cfg.deterministic_reduce}};
  if (cfg.tol) config["tol"] = *cfg.tol;
  if (cfg.function_override)
    config["function"] = trigpoly_to_json(*cfg.function_override);
  json checks = json::array();
  for (const auto& c : result.checks) checks.push_back(report_to_json(c));
  return json{{"version", kVersion},
              {"config", std::move(config)},
              {"checks", std::move(checks)},
              {"pass", result.pass}};
}

int run_suite(const SuiteConfig& cfg) {
  const SuiteResult result = run_suite_collect(cfg);
  const json report = suite_report(cfg, result);
  if (cfg.out_path.empty())
    std::cout << report.dump(2) << std::endl;
  else
    save_json_file(cfg.out_path, report);
  return result.pass ? 0 : 1;
}

int cli_derive(const std::string& matrix_path, const std::string& hermitian_path,
               const std::string& f_path, int order, double t,
               const std::string& out_path) {
  const UnitaryMatrix u(matrix_from_json(load_json_file(matrix_path)));
  const Mat a = matrix_from_json(load_json_file(hermitian_path));
  const CircleFunction f(trigpoly_from_json(load_json_file(f_path)));
  const Mat d = gateaux_exponential(f, u, a, t, order);
  json out{{"version", kVersion},
           {"order", order},
           {"t", t},
           {"derivative", matrix_to_json(d)},
           {"norm_p2", schatten_norm(d, 2.0)}};
  if (out_path.empty())
    std::cout << out.dump(2) << std::endl;
  else
    save_json_file(out_path, out);
  return 0;
}

int cli_remainder(const std::string& matrix_path, const std::string& hermitian_path,
                  const std::string& f_path, int order, double p,
                  const std::string& out_path) {
  const UnitaryMatrix u(matrix_from_json(load_json_file(matrix_path)));
  const Mat a = matrix_from_json(load_json_file(hermitian_path));
  const CircleFunction f(trigpoly_from_json(load_json_file(f_path)));
  if (!(p > 0.0)) throw UsageError("p must be positive");

  const auto t0 = std::chrono::steady_clock::now();
  RemainderReport rep;
  rep.order = order;
  rep.p = p;
  rep.p_effective = p / order;
  rep.quasi_norm = rep.p_effective < 1.0;

  const Mat r_exp = remainder_exponential(f, u, a, order);
  const UnitaryPath path = UnitaryPath::exponential(a, u);
  const Mat r_moi = remainder_moi(path, f, 1.0, order);
  const Mat r_dir = remainder_direct(path, f, 1.0, order);
  const double scale = 1.0 + schatten_norm(r_exp, 2.0);
  rep.residual_rel =
      std::max(schatten_norm(Mat(r_exp - r_moi), 2.0) / scale,
               schatten_norm(Mat(r_exp - r_dir), 2.0) / scale);
  rep.remainder_norm = schatten_norm(r_exp, rep.p_effective);
  rep.pass = rep.residual_rel <= 1e-8;
  if (order > 1 && double(order) < p) {
    const auto scales = default_scale_grid();
    const RemainderReport sweep = estimate_sweep(f, u, a, order, p, scales);
    rep.estimate_ratio = sweep.estimate_ratio;
    rep.derivative_ratio = sweep.derivative_ratio;
    rep.scaling_slope = sweep.scaling_slope;
    rep.pass = rep.pass && sweep.pass;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

  json out = remainder_report_to_json(rep);
  out["remainder"] = matrix_to_json(r_exp);
  if (out_path.empty())
    std::cout << out.dump(2) << std::endl;
  else
    save_json_file(out_path, out);
  return rep.pass ? 0 : 1;
}

}  // namespace opint
