#pragma once

#include <Eigen/Dense>
#include <vector>

#include "opint/circle_fn.hpp"
#include "opint/common.hpp"

namespace opint {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Schatten index restricted to the open interval (1, inf), the range on
/// which the perturbation bounds are stated. The norm itself is defined for
/// any positive exponent; see schatten_norm.
struct SchattenExponent {
  double p;
  explicit SchattenExponent(double p_);
};

struct SpectralCluster {
  cplx eigenvalue;  // representative, normalized to unit modulus
  Mat projection;   // Hermitian idempotent onto the cluster eigenspace
  int multiplicity;
};

/// Unitary matrix with its spectral decomposition attached. Construction
/// verifies unitarity (deviation of U*U from the identity at most 1e-10 in
/// operator norm) and groups eigenvalues into clusters of chordal tolerance
/// kSpectralClusterTol. The eigenvector basis comes from a Schur
/// decomposition, so it is orthonormal by construction and the cluster
/// projections are sums of its column outer products.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Mat u);
  static UnitaryMatrix identity(int d);

  int dim() const { return static_cast<int>(u_.rows()); }
  const Mat& matrix() const { return u_; }
  const std::vector<SpectralCluster>& clusters() const { return clusters_; }
  int cluster_count() const { return static_cast<int>(clusters_.size()); }

  // eigenbasis access for spectral sums
  const Mat& eigenvectors() const { return q_; }
  const std::vector<int>& cluster_of_column() const { return cluster_of_col_; }
  const std::vector<cplx>& cluster_values() const { return values_; }

 private:
  Mat u_;
  Mat q_;
  std::vector<int> cluster_of_col_;
  std::vector<cplx> values_;
  std::vector<SpectralCluster> clusters_;
};

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kHermitianTol = 1e-10;

/// Largest singular value.
double operator_norm(const Mat& x);

/// Schatten norm (sum of p-th powers of singular values)^(1/p). Defined for
/// every p > 0; for p < 1 this is a quasi-norm, computed by the same
/// formula.
double schatten_norm(const Mat& x, double p);

bool is_hermitian(const Mat& a, double tol = kHermitianTol);

/// exp(i*scale*A) for Hermitian A, through the eigendecomposition of A.
Mat hermitian_exp_i(const Mat& a, double scale = 1.0);

/// exp(iA) U0; rejects non-Hermitian A.
UnitaryMatrix make_unitary_from_hermitian(const Mat& a, const UnitaryMatrix& u0);

/// Tail of the exponential series, sum_{k >= from_order} (iA)^k / k!,
/// evaluated as exponential minus partial sum on the eigenvalues of the
/// Hermitian argument. No truncation parameter is involved.
Mat exp_i_tail(const Mat& a, int from_order);

/// f(U) = sum_i f(lambda_i) P_i over the spectral clusters.
Mat func_calculus(const CircleFunction& f, const UnitaryMatrix& u);

}  // namespace opint
