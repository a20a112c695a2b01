#include <CLI11.hpp>
#include <iostream>

#include "opint/harness.hpp"

namespace {

int dispatch(CLI::App& app, const std::function<int()>& chosen) {
  try {
    return chosen();
  } catch (const opint::UsageError& e) {
    std::cerr << app.get_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << app.get_name() << ": invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << app.get_name() << ": error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"identity checks for operator integrals of unitary matrices"};
  app.require_subcommand(1);

  opint::SuiteConfig cfg;
  std::string function_path;
  auto* verify = app.add_subcommand("verify", "run a named check suite");
  verify->add_option("suite", cfg.suite,
                     "perturbation | telescoping | frechet | gateaux | "
                     "product-rule | taylor | estimate | convergence")
      ->required();
  verify->add_option("--dim", cfg.dim, "matrix dimension");
  verify->add_option("--order", cfg.order, "derivative / integral order");
  verify->add_option("--p", cfg.p, "Schatten exponent");
  verify->add_option("--seed", cfg.seed, "base seed; trial i uses a derived seed");
  verify->add_option("--trials", cfg.trials, "independent random instances");
  verify->add_option("--degree", cfg.degree, "degree bound for random functions");
  double tol_value = 0.0;
  auto* tol_opt = verify->add_option("--tol", tol_value, "override the pass tolerance");
  verify->add_option("--f", function_path,
                     "JSON file with trig polynomial coefficients; replaces the "
                     "random function");
  verify->add_option("--out", cfg.out_path, "write the JSON report here");
  verify->add_flag("--deterministic-reduce,!--no-deterministic-reduce",
                   cfg.deterministic_reduce,
                   "keep the sequential accumulation order");

  std::string matrix_path, hermitian_path, f_path, out_path;
  int order = 1;
  double t = 0.0, p = 2.0;
  auto* derive = app.add_subcommand(
      "derive", "derivative of t -> f(exp(itA) U) from JSON inputs");
  derive->add_option("--matrix", matrix_path, "unitary U as JSON")->required();
  derive->add_option("--hermitian", hermitian_path, "Hermitian A as JSON")->required();
  derive->add_option("--f", f_path, "trig polynomial as JSON")->required();
  derive->add_option("--order", order, "derivative order");
  derive->add_option("--t", t, "evaluation point");
  derive->add_option("--out", out_path, "write the result here");

  auto* remainder = app.add_subcommand(
      "remainder", "Taylor remainder of f along exp(itA) U at t = 1");
  remainder->add_option("--matrix", matrix_path, "unitary U as JSON")->required();
  remainder->add_option("--hermitian", hermitian_path, "Hermitian A as JSON")->required();
  remainder->add_option("--f", f_path, "trig polynomial as JSON")->required();
  remainder->add_option("--order", order, "expansion order");
  remainder->add_option("--p", p, "Schatten exponent for the remainder norm");
  remainder->add_option("--out", out_path, "write the result here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (verify->parsed()) {
    return dispatch(app, [&] {
      if (*tol_opt) cfg.tol = tol_value;
      if (!function_path.empty())
        cfg.function_override =
            opint::trigpoly_from_json(opint::load_json_file(function_path));
      return opint::run_suite(cfg);
    });
  }
  if (derive->parsed()) {
    return dispatch(app, [&] {
      return opint::cli_derive(matrix_path, hermitian_path, f_path, order, t,
                               out_path);
    });
  }
  return dispatch(app, [&] {
    return opint::cli_remainder(matrix_path, hermitian_path, f_path, order, p,
                                out_path);
  });
}
