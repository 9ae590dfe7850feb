#ifndef DBR_CONTRACTIVE_HPP
#define DBR_CONTRACTIVE_HPP

// Defect operators, Julia operator, and the renormed ranges M(T), C(T).

#include <utility>

#include "dbr/linalg.hpp"

namespace dbr {

struct DefectPair {
  Mat D_T;        // (I - T*T)^{1/2}, on the domain E
  Mat D_Tstar;    // (I - TT*)^{1/2}, on the codomain H
  int rank_T = 0;
  int rank_Tstar = 0;
  Mat range_T;      // orthonormal basis of the defect space of T
  Mat range_Tstar;  // orthonormal basis of the defect space of T*
};

inline DefectPair defects(const Mat& T, double cutoff = kRankCutoff) {
  const Mat IE = Mat::Identity(T.cols(), T.cols());
  const Mat IH = Mat::Identity(T.rows(), T.rows());
  const Mat A = IE - T.adjoint() * T;
  const Mat B = IH - T * T.adjoint();
  // Both spectra lie in [0, 1]; measuring ranks against 1 keeps a near-isometry from promoting
  // roundoff to defect directions.
  const PsdSpectrum sa = psd_spectrum(A, 1.0, cutoff);
  const PsdSpectrum sb = psd_spectrum(B, 1.0, cutoff);
  DefectPair d;
  d.D_T = psd_sqrt(sa);
  d.D_Tstar = psd_sqrt(sb);
  d.rank_T = sa.rank;
  d.rank_Tstar = sb.rank;
  d.range_T = sa.range();
  d.range_Tstar = sb.range();
  return d;
}

inline double intertwine_check(const Mat& T) {
  const DefectPair d = defects(T);
  return spectral_norm(T * d.D_T - d.D_Tstar * T);
}

// J(T) : E + D_{T*} -> H + D_T, defect spaces in the bases of defects().
inline Mat julia(const Mat& T, const DefectPair& d) {
  const Eigen::Index m = T.rows(), n = T.cols();
  const Mat& X = d.range_T;
  const Mat& Y = d.range_Tstar;
  Mat J = Mat::Zero(m + X.cols(), n + Y.cols());
  J.topLeftCorner(m, n) = T;
  J.topRightCorner(m, Y.cols()) = d.D_Tstar * Y;
  J.bottomLeftCorner(X.cols(), n) = X.adjoint() * d.D_T;
  J.bottomRightCorner(X.cols(), Y.cols()) = -X.adjoint() * T.adjoint() * Y;
  return J;
}

inline Mat julia(const Mat& T) { return julia(T, defects(T)); }

enum class SpaceTag { M, C };

struct RenormedVector {
  Vec ambient;
  SpaceTag tag = SpaceTag::M;
  Vec preimage;
};

// x = TT*x + D_{T*}^2 x
inline std::pair<RenormedVector, RenormedVector> complementary_decompose(const Mat& T, const Vec& x) {
  const DefectPair d = defects(T);
  if (x.size() != T.rows()) throw Error(ErrorKind::DimensionMismatch, "x must live in the codomain of T");
  RenormedVector m{T * (T.adjoint() * x), SpaceTag::M, T.adjoint() * x};
  RenormedVector c{d.D_Tstar * (d.D_Tstar * x), SpaceTag::C, d.D_Tstar * x};
  return {m, c};
}

inline Mat defining_operator(const Mat& T, SpaceTag tag) {
  return tag == SpaceTag::M ? T : defects(T).D_Tstar;
}

struct Membership {
  double residual = 0.0;
  bool member = false;
  double dual_residual = 0.0;  // T*x against C(T*) = range D_T; C tag only
  bool dual_member = false;
  bool consistent = true;
};

inline Membership membership(const Mat& T, const Vec& x, SpaceTag tag) {
  Membership r;
  if (tag == SpaceTag::M) {
    r.residual = relative_residual(range_basis(T), x);
    r.member = r.residual <= kMembershipTolerance;
    r.dual_residual = r.residual;
    r.dual_member = r.member;
    return r;
  }
  const DefectPair d = defects(T);
  r.residual = relative_residual(d.range_Tstar, x);
  r.member = r.residual <= kMembershipTolerance;
  // measured against ||x||: T* may shrink x far below the roundoff of its projection
  const Vec y = T.adjoint() * x;
  const double nx = x.norm();
  r.dual_residual = nx == 0.0 ? 0.0 : (y - d.range_T * (d.range_T.adjoint() * y)).norm() / nx;
  r.dual_member = r.dual_residual <= kMembershipTolerance;
  r.consistent = r.member == r.dual_member;
  return r;
}

// <u, v> in M(T) or C(T) through minimal-norm preimages.
inline cplx renormed_inner(const Mat& T, const RenormedVector& u, const RenormedVector& v) {
  if (u.tag != v.tag) throw Error(ErrorKind::TagMismatch, "vectors belong to different spaces");
  if (membership(T, u.ambient, u.tag).residual > kMembershipTolerance ||
      membership(T, v.ambient, v.tag).residual > kMembershipTolerance)
    throw Error(ErrorKind::NotInSpace, "membership residual above 1e-6");
  const Mat P = pinv(defining_operator(T, u.tag));
  return (P * v.ambient).dot(P * u.ambient);
}

// C(T) inner product by the two-term route <x1,x2> + <T*x1, T*x2>_{C(T*)}.
inline cplx complementary_inner_dual(const Mat& T, const Vec& x1, const Vec& x2) {
  const DefectPair d = defects(T);
  const Mat P = pinv(d.D_T);
  const Vec y1 = P * (T.adjoint() * x1);
  const Vec y2 = P * (T.adjoint() * x2);
  return x2.dot(x1) + y2.dot(y1);
}

// True iff T1 T1* <= T2 T2* up to -1e-10.
inline bool douglas_order(const Mat& T1, const Mat& T2) {
  if (T1.rows() != T2.rows()) throw Error(ErrorKind::DimensionMismatch, "row counts differ");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(T2 * T2.adjoint() - T1 * T1.adjoint()),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -kPsdTolerance;
}

struct GeometricSplit {
  double orthogonality = 0.0;   // ||X1* X2||
  double m_norm_defect = 0.0;   // Gram mismatch of P1 X1 in M(T) against X1
  double c_norm_defect = 0.0;   // Gram mismatch of P1 X2 in C(T) against X2
  int rank_T = 0;
  int rank_Tstar = 0;
};

// X1 = J(E + 0) restricted to (ker T)^perp, X2 = J(0 + D_{T*}).
inline GeometricSplit geometric_split_check(const Mat& T) {
  const DefectPair d = defects(T);
  const Mat J = julia(T, d);
  const Eigen::Index m = T.rows(), n = T.cols();
  GeometricSplit g;
  g.rank_T = d.rank_T;
  g.rank_Tstar = d.rank_Tstar;
  const Mat X1full = J.leftCols(n);
  const Mat X2 = J.rightCols(d.rank_Tstar);
  g.orthogonality = X2.cols() ? spectral_norm(X1full.adjoint() * X2) : 0.0;

  Eigen::BDCSVD<Mat> svd(T, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) > kRankCutoff * sv(0)) ++r;
  const Mat V = svd.matrixV().leftCols(r);
  const Mat X1 = J.leftCols(n) * V;
  const Mat pre1 = pinv(T) * (X1.topRows(m));
  if (r > 0) g.m_norm_defect = (pre1.adjoint() * pre1 - X1.adjoint() * X1).cwiseAbs().maxCoeff();
  if (X2.cols() > 0) {
    const Mat pre2 = pinv(d.D_Tstar) * X2.topRows(m);
    g.c_norm_defect = (pre2.adjoint() * pre2 - X2.adjoint() * X2).cwiseAbs().maxCoeff();
  }
  return g;
}

}  // namespace dbr

#endif  // DBR_CONTRACTIVE_HPP
