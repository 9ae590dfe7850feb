#ifndef DBR_HB_SPACE_HPP
#define DBR_HB_SPACE_HPP

// de Branges-Rovnyak spaces H(b) on the truncation P_N.
//
// The space is the complementary space of the contraction B R^{-1/2}, where B is the
// compressed T_b and R = B*B + A*A for a defect column A. Without an outer companion
// A*A = I - B*B, R = I and G = I - BB*. With the outer companion a of a nonextreme b,
// A is the compressed T_a; then G^{-1} = I + B (A*A)^{-1} B* is the exact H(b) norm
// restricted to P_N and the coanalytic Toeplitz operators act on it exactly.

#include <optional>

#include "dbr/contractive.hpp"
#include "dbr/dichotomy.hpp"

namespace dbr {

struct HbSpace {
  HardySeries b;
  int N = 0;
  Mat Tb;
  Mat G;      // kernel operator, G k_lambda is the reproducing kernel
  Mat D;      // G^{1/2}
  Mat Gbar;   // H(b-bar) kernel operator on P_N
  PsdSpectrum spectrum;
  int rank = 0;
  Mat basis;   // H(b)-orthonormal columns spanning range(G)
  Mat coords;  // left inverse of basis on range(G)
  std::optional<HardySeries> a;
  Verdict verdict = Verdict::Indeterminate;
  bool inner = false;

  Mat range() const { return spectrum.range(); }
  // Pseudoinverse of G restricted to its numerical range.
  Mat metric() const {
    const Mat V = range();
    return V * spectrum.range_values().cwiseInverse().asDiagonal() * V.adjoint();
  }
};

struct HbVector {
  HardySeries ambient;
  double hb_norm_sq = 0.0;
  double residual = 0.0;
};

inline constexpr double kGramTolerance = 1e-8;

inline HbSpace assemble(const HardySeries& b, const std::optional<HardySeries>& a, Verdict verdict,
                        bool inner) {
  HbSpace sp;
  sp.b = b;
  sp.N = b.degree();
  sp.verdict = verdict;
  sp.inner = inner;
  const int n = sp.N + 1;
  const Mat I = Mat::Identity(n, n);
  sp.Tb = toeplitz_analytic(b);
  const Mat& B = sp.Tb;
  if (a) {
    sp.a = resized(*a, sp.N);
    const Mat A = toeplitz_analytic(*sp.a);
    sp.Gbar = hermitian_part(A.adjoint() * A);
    const Mat R = hermitian_part(B.adjoint() * B + sp.Gbar);
    const Mat X = R.llt().solve(Mat(B.adjoint()));
    sp.G = hermitian_part(I - B * X);
  } else {
    sp.Gbar = hermitian_part(I - B.adjoint() * B);
    sp.G = hermitian_part(I - B * B.adjoint());
  }
  sp.spectrum = psd_spectrum(sp.G, -1.0, kRankCutoff, kGramTolerance);
  sp.rank = sp.spectrum.rank;
  sp.D = psd_sqrt(sp.spectrum);
  const Mat V = sp.range();
  const Eigen::VectorXd s = sp.spectrum.range_values().cwiseSqrt();
  sp.basis = V * s.asDiagonal();
  sp.coords = s.cwiseInverse().asDiagonal() * V.adjoint();
  return sp;
}

inline HbSpace build(const SymbolSpec& s, int N, ClassifyOptions opt = {}) {
  if (N < 4) throw Error(ErrorKind::InvalidInput, "N must be at least 4");
  opt.N = N;
  const Classification c = classify(s, opt);
  const HardySeries b = symbol_coeffs(s, N);
  return assemble(b, c.a, c.verdict, c.inner);
}

inline HbSpace build(const HardySeries& b, ClassifyOptions opt = {}) {
  Polynomial p{std::vector<cplx>(b.c.data(), b.c.data() + b.c.size())};
  return build(SymbolSpec{p}, b.degree(), opt);
}

inline void require_degree(const HbSpace& sp, const HardySeries& h) {
  if (h.degree() != sp.N) throw Error(ErrorKind::DegreeMismatch, "series degree differs from the space");
}

inline double membership_residual(const HbSpace& sp, const HardySeries& h) {
  require_degree(sp, h);
  return relative_residual(sp.range(), h.c);
}

inline void require_member(const HbSpace& sp, const HardySeries& h) {
  const double r = membership_residual(sp, h);
  if (r > kMembershipTolerance)
    throw Error(ErrorKind::NotInSpace, "membership residual " + std::to_string(r));
}

// <G^+ h1, h2>, without the membership check.
inline cplx hb_inner_unchecked(const HbSpace& sp, const HardySeries& h1, const HardySeries& h2) {
  const Vec c1 = sp.coords * h1.c;
  const Vec c2 = sp.coords * h2.c;
  return c2.dot(c1);
}

inline cplx hb_inner(const HbSpace& sp, const HardySeries& h1, const HardySeries& h2) {
  require_member(sp, h1);
  require_member(sp, h2);
  return hb_inner_unchecked(sp, h1, h2);
}

// <h1,h2> + <T_bbar h1, T_bbar h2> in H(b-bar), through the pseudoinverse of Gbar.
inline cplx hb_inner_dual(const HbSpace& sp, const HardySeries& h1, const HardySeries& h2) {
  require_member(sp, h1);
  require_member(sp, h2);
  const PsdSpectrum s = psd_spectrum(sp.Gbar, -1.0, kRankCutoff, kGramTolerance);
  const Mat V = s.range();
  const Mat P = V * s.range_values().cwiseInverse().asDiagonal() * V.adjoint();
  const Vec y1 = sp.Tb.adjoint() * h1.c;
  const Vec y2 = sp.Tb.adjoint() * h2.c;
  return h2.c.dot(h1.c) + y2.dot(P * y1);
}

inline HbVector hb_vector(const HbSpace& sp, const HardySeries& h) {
  HbVector v{h, 0.0, membership_residual(sp, h)};
  v.hb_norm_sq = hb_inner_unchecked(sp, h, h).real();
  return v;
}

inline HardySeries kernel(const HbSpace& sp, cplx lambda) {
  if (std::abs(lambda) > 0.9) throw Error(ErrorKind::PointOutsideDisk, "kernel needs |lambda| <= 0.9");
  return HardySeries(Vec(sp.G * szego_kernel(lambda, sp.N).c));
}

// Coefficients of (1 - conj(b(lambda)) b(z)) / (1 - conj(lambda) z) truncated at N.
inline HardySeries kernel_closed_form(const HbSpace& sp, cplx lambda) {
  const HardySeries k = szego_kernel(lambda, sp.N);
  const cplx bl = eval(sp.b, lambda);
  HardySeries out = k;
  out.c -= std::conj(bl) * multiply(sp.b, k, sp.N).c;
  return out;
}

struct MbNorm {
  double norm = 0.0;          // ||bf||_{M(b)} = ||f||
  double shift_defect = 0.0;  // | ||z bf||_{M(b)} - ||bf||_{M(b)} |
};

inline MbNorm m_b_norm(const HbSpace&, const HardySeries& f) {
  HardySeries padded = resized(f, f.degree() + 1);
  const HardySeries zf = forward_shift(padded);
  return {f.norm(), std::abs(zf.norm() - f.norm())};
}

inline Mat backshift_matrix(int N) { return shift_matrix(N).adjoint(); }

inline Mat xb_matrix(const HbSpace& sp) { return sp.coords * backshift_matrix(sp.N) * sp.basis; }

inline HardySeries xb_apply(const HbSpace& sp, const HardySeries& h) {
  require_member(sp, h);
  HardySeries out = backshift(h);
  require_member(sp, out);
  return out;
}

struct InvarianceReport {
  double phi_sup = 0.0;
  double max_ratio = 0.0;      // max ||T_phibar u||_{H(b)} / ||phi||_inf over basis members u
  double max_residual = 0.0;   // max ||(I - P_range) T_phibar u|| / ||u||
  double operator_norm = 0.0;  // ||T_phibar|| in the H(b)-orthonormal basis
  int violations = 0;
};

inline InvarianceReport coanalytic_invariance_check(const HbSpace& sp, const SymbolSpec& phi) {
  InvarianceReport r;
  const int M = std::max(kDefaultGrid, static_cast<int>(std::bit_ceil(static_cast<unsigned>(4 * (sp.N + 1)))));
  r.phi_sup = sup_on_grid(phi, M);
  const Mat Tphi = toeplitz_coanalytic(symbol_expansion(phi, sp.N).series);
  const Mat V = sp.range();
  for (int i = 0; i < sp.rank; ++i) {
    const Vec y = Tphi * sp.basis.col(i);
    const double res = (y - V * (V.adjoint() * y)).norm() / sp.basis.col(i).norm();
    const double nrm = (sp.coords * y).norm();
    const double ratio = r.phi_sup > 0.0 ? nrm / r.phi_sup : (nrm > 0.0 ? INFINITY : 0.0);
    r.max_residual = std::max(r.max_residual, res);
    r.max_ratio = std::max(r.max_ratio, ratio);
    if (res > kMembershipTolerance || ratio > 1.0 + 1e-8) ++r.violations;
  }
  if (sp.rank > 0) r.operator_norm = spectral_norm(sp.coords * Tphi * sp.basis);
  return r;
}

inline HbVector sstar_b(const HbSpace& sp) { return hb_vector(sp, backshift(sp.b)); }

// S h - <h, S*b>_{H(b)} b
inline HardySeries xb_adjoint_apply(const HbSpace& sp, const HardySeries& h) {
  require_member(sp, h);
  const HardySeries sb = backshift(sp.b);
  HardySeries out = forward_shift(h);
  out.c -= hb_inner_unchecked(sp, h, sb) * sp.b.c;
  return out;
}

// Adjoint of xb_matrix in the orthonormal basis, mapped back to coefficients.
inline HardySeries xb_adjoint_metric(const HbSpace& sp, const HardySeries& h) {
  require_member(sp, h);
  return HardySeries(Vec(sp.basis * (xb_matrix(sp).adjoint() * (sp.coords * h.c))));
}

struct DifferenceQuotient {
  HardySeries q;
  double resolvent_defect = 0.0;  // ||(I - lambda X_b) q - S*b||
  double residual = 0.0;          // membership residual of q
};

inline DifferenceQuotient difference_quotient(const HbSpace& sp, cplx lambda) {
  if (std::abs(lambda) > 0.9) throw Error(ErrorKind::PointOutsideDisk, "difference_quotient needs |lambda| <= 0.9");
  DifferenceQuotient d;
  d.q = HardySeries(sp.N);
  // synthetic division: q_n = b_{n+1} + lambda q_{n+1}
  cplx acc = 0.0;
  for (int n = sp.N - 1; n >= 0; --n) {
    acc = sp.b.c(n + 1) + lambda * acc;
    d.q.c(n) = acc;
  }
  d.residual = membership_residual(sp, d.q);
  const Vec xq = sp.basis * (xb_matrix(sp) * (sp.coords * d.q.c));
  d.resolvent_defect = (d.q.c - lambda * xq - backshift(sp.b).c).norm();
  return d;
}

struct KbReport {
  int dim = 0;
  double isometry_defect = 0.0;      // Gram of P1 v in H(b) against Gram of v
  double intertwining_defect = 0.0;  // ||S* P1 v - X_b P1 v|| over the frame
  double invariance_defect = 0.0;    // frame leaves K under S* + V_Delta*
  double orthogonality_defect = 0.0; // against {bh + Delta h} on the grid, interior h
  double transport_defect = 0.0;     // grid norm of the Delta component against its coefficients
  bool grid_transport = false;
};

inline KbReport kb_representation(const HbSpace& sp, int M) {
  const int N = sp.N, n = N + 1;
  if (!is_power_of_two(M) || M < 4 * n) throw Error(ErrorKind::GridTooSmall, "kb_representation needs M >= 4(N+1)");
  KbReport r;
  const Mat& B = sp.Tb;
  Mat x, y;
  if (sp.inner) {
    x = sp.range();
    y = Mat::Zero(n, x.cols());
  } else {
    Mat C(2 * n, n);
    C.topRows(n) = B;
    C.bottomRows(n) = sp.a ? toeplitz_analytic(*sp.a) : psd_sqrt(psd_spectrum(sp.Gbar, -1.0, kRankCutoff, kGramTolerance));
    Eigen::BDCSVD<Mat> svd(C, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv(rank) > kRankCutoff * sv(0)) ++rank;
    const Mat K = svd.matrixU().rightCols(2 * n - rank);
    x = K.topRows(n);
    y = K.bottomRows(n);
    Mat Sk(2 * n, K.cols());
    Sk.topRows(n) = backshift_matrix(N) * x;
    Sk.bottomRows(n) = backshift_matrix(N) * y;
    if (sp.a) r.invariance_defect = spectral_norm(Sk - K * (K.adjoint() * Sk));
  }
  r.dim = static_cast<int>(x.cols());
  if (r.dim == 0) return r;
  const Mat hbGram = x.adjoint() * sp.metric() * x;
  const Mat vGram = x.adjoint() * x + y.adjoint() * y;
  r.isometry_defect = (hbGram - vGram).cwiseAbs().maxCoeff();
  r.intertwining_defect = spectral_norm(backshift_matrix(N) * x - sp.basis * xb_matrix(sp) * sp.coords * x);

  const BoundaryGrid bs = to_boundary(sp.b, M);
  const BoundaryGrid delta = delta_grid(bs);
  const int kmax = sp.a ? std::max(N / 2, N - std::max(effective_degree(sp.b), effective_degree(*sp.a))) : N / 2;
  if (sp.inner || sp.a) {
    r.grid_transport = true;
    // Delta component on the grid: (conj(a)/|a|) y for nonextreme b, zero for inner b
    Mat psi = Mat::Zero(M, r.dim);
    if (sp.a) {
      const BoundaryGrid ag = to_boundary(*sp.a, M);
      for (int i = 0; i < r.dim; ++i) {
        const BoundaryGrid yg = to_boundary(HardySeries(Vec(y.col(i))), M);
        for (int j = 0; j < M; ++j) {
          const double m = std::abs(ag.samples(j));
          const cplx phase = m > 1e-14 ? std::conj(ag.samples(j)) / m : cplx(1.0);
          psi(j, i) = phase * yg.samples(j);
        }
      }
      r.transport_defect = (psi.adjoint() * psi / double(M) - y.adjoint() * y).cwiseAbs().maxCoeff();
    }
    for (int k = 0; k <= kmax; ++k) {
      HardySeries zk(N);
      zk.c(k) = 1.0;
      const Vec bh = multiply(sp.b, zk, N).c;
      Vec dh(M);
      for (int j = 0; j < M; ++j) dh(j) = delta.samples(j) * std::polar(1.0, k * delta.node(j));
      const Eigen::RowVectorXcd ip = bh.adjoint() * x + dh.adjoint() * psi / double(M);
      r.orthogonality_defect = std::max(r.orthogonality_defect, ip.cwiseAbs().maxCoeff());
    }
  }
  return r;
}

}  // namespace dbr

#endif  // DBR_HB_SPACE_HPP
