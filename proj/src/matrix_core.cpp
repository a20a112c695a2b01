#include "opint/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opint {

SchattenExponent::SchattenExponent(double p_) : p(p_) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("Schatten exponent must lie in (1, inf)");
}

double operator_norm(const Mat& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(x);
  return svd.singularValues()(0);
}

double schatten_norm(const Mat& x, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("Schatten exponent must be positive");
  Eigen::JacobiSVD<Mat> svd(x);
  const auto& sv = svd.singularValues();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p);
  return std::pow(acc, 1.0 / p);
}

bool is_hermitian(const Mat& a, double tol) {
  return operator_norm(Mat(a - a.adjoint())) <= tol;
}

UnitaryMatrix::UnitaryMatrix(Mat u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols() || u_.rows() == 0)
    throw std::invalid_argument("unitary matrix must be square and nonempty");
  const int d = dim();
  const Mat gram = u_.adjoint() * u_ - Mat::Identity(d, d);
  if (operator_norm(gram) > kUnitarityTol)
    throw std::invalid_argument("matrix is not unitary within tolerance");

  // a unitary matrix is normal, so its Schur form is diagonal up to roundoff
  // and the Schur basis is an orthonormal eigenbasis
  Eigen::ComplexSchur<Mat> schur(u_, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("Schur decomposition failed");
  q_ = schur.matrixU();
  std::vector<cplx> raw(d);
  for (int j = 0; j < d; ++j) {
    cplx lam = schur.matrixT()(j, j);
    const double mod = std::abs(lam);
    if (std::abs(mod - 1.0) > kUnitarityTol)
      throw std::runtime_error("eigenvalue off the unit circle");
    raw[j] = lam / mod;
  }

  cluster_of_col_ = cluster_unit_circle(raw, kSpectralClusterTol);
  int nclusters = 0;
  for (int l : cluster_of_col_) nclusters = std::max(nclusters, l + 1);

  values_.assign(nclusters, cplx(0.0, 0.0));
  std::vector<int> mult(nclusters, 0);
  for (int j = 0; j < d; ++j) {
    values_[cluster_of_col_[j]] += raw[j];
    ++mult[cluster_of_col_[j]];
  }
  for (int c = 0; c < nclusters; ++c) values_[c] /= std::abs(values_[c]);

  clusters_.reserve(nclusters);
  for (int c = 0; c < nclusters; ++c) {
    Mat proj = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j)
      if (cluster_of_col_[j] == c) proj += q_.col(j) * q_.col(j).adjoint();
    clusters_.push_back({values_[c], std::move(proj), mult[c]});
  }

  // resolution of the identity and spectral reconstruction
  Mat sum_p = Mat::Zero(d, d);
  Mat recon = Mat::Zero(d, d);
  for (const auto& cl : clusters_) {
    sum_p += cl.projection;
    recon += cl.eigenvalue * cl.projection;
  }
  if (operator_norm(Mat(sum_p - Mat::Identity(d, d))) > 1e-9)
    throw std::runtime_error("spectral projections do not resolve the identity");
  if (operator_norm(Mat(recon - u_)) > 1e-9)
    throw std::runtime_error("spectral reconstruction failed");
}

UnitaryMatrix UnitaryMatrix::identity(int d) {
  return UnitaryMatrix(Mat::Identity(d, d));
}

Mat hermitian_exp_i(const Mat& a, double scale) {
  if (!is_hermitian(a))
    throw std::invalid_argument("generator is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigendecomposition failed");
  const auto& ev = es.eigenvalues();
  Vec phases(ev.size());
  for (Eigen::Index j = 0; j < ev.size(); ++j)
    phases(j) = circle_point(scale * ev(j));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryMatrix make_unitary_from_hermitian(const Mat& a, const UnitaryMatrix& u0) {
  if (a.rows() != u0.dim() || a.cols() != u0.dim())
    throw std::invalid_argument("generator and base unitary sizes differ");
  return UnitaryMatrix(hermitian_exp_i(a) * u0.matrix());
}

Mat exp_i_tail(const Mat& a, int from_order) {
  if (from_order < 0) throw std::invalid_argument("tail order must be >= 0");
  if (!is_hermitian(a))
    throw std::invalid_argument("generator is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  const auto& ev = es.eigenvalues();
  Vec tail(ev.size());
  for (Eigen::Index j = 0; j < ev.size(); ++j) {
    const cplx ix(0.0, ev(j));
    cplx partial = 0.0;
    cplx term = 1.0;
    for (int k = 0; k < from_order; ++k) {
      partial += term;
      term *= ix / double(k + 1);
    }
    tail(j) = circle_point(ev(j)) - partial;
  }
  return es.eigenvectors() * tail.asDiagonal() * es.eigenvectors().adjoint();
}

Mat func_calculus(const CircleFunction& f, const UnitaryMatrix& u) {
  const int d = u.dim();
  Mat acc = Mat::Zero(d, d);
  for (const auto& cl : u.clusters())
    acc += f.eval(cl.eigenvalue) * cl.projection;
  return acc;
}

}  // namespace opint
