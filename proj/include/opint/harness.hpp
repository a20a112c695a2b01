#pragma once

#include <optional>
#include <random>
#include <string>

#include "opint/json_io.hpp"

namespace opint {

inline constexpr const char* kVersion = "0.1.0";

/// Deterministic instance source: one seed fixes every draw. Gaussians are
/// produced by Box-Muller on raw 53-bit engine output, so streams do not
/// depend on the standard library's distribution internals.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  cplx complex_gaussian();

  Mat ginibre(int d);         // independent complex Gaussian entries
  Mat hermitian(int d);       // (G + G*)/2
  Mat hermitian_unit(int d);  // scaled to unit operator norm
  /// QR of a Ginibre matrix with the R-diagonal phases folded into Q.
  UnitaryMatrix unitary(int d);
  /// Gaussian coefficients on every degree in [-max_degree, max_degree].
  TrigPoly trigpoly(int max_degree);
  /// Same, rescaled so that coeff_mass(weight) equals target.
  TrigPoly trigpoly_normalized(int max_degree, int weight, double target);

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// U(t) = exp(itA) exp(itB) U0 with exact derivative closures up to order 4.
/// A path that is not generated by a single Hermitian, for exercising the
/// general code paths.
UnitaryPath two_factor_path(const Mat& a, const Mat& b, const UnitaryMatrix& base);

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::string suite;
  int dim = 3;
  int order = 2;
  double p = 2.0;
  std::uint64_t seed = 1;
  int trials = 20;
  int degree = 6;  // trig polynomial degree bound for random functions
  std::optional<double> tol;
  bool deterministic_reduce = true;
  std::optional<TrigPoly> function_override;
  std::string out_path;  // empty writes the report to stdout
};

struct SuiteResult {
  std::vector<CheckReport> checks;
  bool pass = true;
};

/// Known suites: perturbation, telescoping, frechet, gateaux, product-rule,
/// taylor, estimate, convergence. Throws UsageError for anything else.
SuiteResult run_suite_collect(const SuiteConfig& cfg);

json suite_report(const SuiteConfig& cfg, const SuiteResult& result);

/// Runs the suite, writes the report, returns 0 when every check passed and
/// 1 otherwise.
int run_suite(const SuiteConfig& cfg);

int cli_derive(const std::string& matrix_path, const std::string& hermitian_path,
               const std::string& f_path, int order, double t,
               const std::string& out_path);
int cli_remainder(const std::string& matrix_path, const std::string& hermitian_path,
                  const std::string& f_path, int order, double p,
                  const std::string& out_path);

}  // namespace opint
