#ifndef DBR_LINALG_HPP
#define DBR_LINALG_HPP

// Dense helpers shared by the operator modules.

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dbr/hardy.hpp"

namespace dbr {

inline constexpr double kRankCutoff = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kMembershipTolerance = 1e-6;

inline Mat hermitian_part(const Mat& A) { return 0.5 * (A + A.adjoint()); }

inline double spectral_norm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(A);
  return svd.singularValues()(0);
}

// Spectral data of a PSD matrix with eigenvalues clamped at zero.
struct PsdSpectrum {
  Eigen::VectorXd values;  // ascending
  Mat vectors;
  int rank = 0;
  double max_value = 0.0;

  // Columns spanning the numerical range.
  Mat range() const { return vectors.rightCols(rank); }
  Eigen::VectorXd range_values() const { return values.tail(rank); }
};

// Throws NotAContraction when an eigenvalue falls below -tolerance.
inline PsdSpectrum psd_spectrum(const Mat& A, double scale_ref = -1.0,
                                double cutoff = kRankCutoff, double tolerance = kPsdTolerance) {
  PsdSpectrum s;
  if (A.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(A));
  s.values = es.eigenvalues();
  s.vectors = es.eigenvectors();
  if (s.values(0) < -tolerance)
    throw Error(ErrorKind::NotAContraction, "negative eigenvalue " + std::to_string(s.values(0)));
  s.values = s.values.cwiseMax(0.0);
  s.max_value = s.values.maxCoeff();
  const double ref = scale_ref >= 0.0 ? scale_ref : s.max_value;
  const double thresh = cutoff * ref;
  s.rank = ref > 0.0 ? static_cast<int>((s.values.array() > thresh).count()) : 0;
  return s;
}

// Square root on the numerical range; eigenvalues below the rank cutoff map to zero, so roundoff
// of order 1e-16 does not turn into 1e-8 entries.
inline Mat psd_sqrt(const PsdSpectrum& s) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(s.values.size());
  r.tail(s.rank) = s.values.tail(s.rank).cwiseSqrt();
  return s.vectors * r.asDiagonal() * s.vectors.adjoint();
}

// Moore-Penrose inverse by SVD with relative cutoff.
inline Mat pinv(const Mat& A, double cutoff = kRankCutoff) {
  if (A.size() == 0) return Mat::Zero(A.cols(), A.rows());
  Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double thresh = cutoff * sv(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Orthonormal basis of range(A) at relative cutoff.
inline Mat range_basis(const Mat& A, double cutoff = kRankCutoff) {
  if (A.size() == 0) return Mat(A.rows(), 0);
  Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thresh = cutoff * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > thresh && sv(r) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

// ||(I - QQ*)x|| / ||x||, zero for x = 0.
inline double relative_residual(const Mat& Q, const Vec& x) {
  const double nx = x.norm();
  if (nx == 0.0) return 0.0;
  if (Q.cols() == 0) return 1.0;
  return (x - Q * (Q.adjoint() * x)).norm() / nx;
}

inline double unitarity_defect(const Mat& U) {
  return spectral_norm(U.adjoint() * U - Mat::Identity(U.cols(), U.cols()));
}

}  // namespace dbr

#endif  // DBR_LINALG_HPP
