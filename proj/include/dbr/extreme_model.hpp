#ifndef DBR_EXTREME_MODEL_HPP
#define DBR_EXTREME_MODEL_HPP

// Extreme-case geometry of X_b and the dilation model: from a pure contraction with
// one-dimensional defects to its symbol b.

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "dbr/hb_space.hpp"

namespace dbr {

inline constexpr double kPurityMargin = 1e-8;

inline Vec eigenvalues(const Mat& T) {
  if (T.rows() == 0) return Vec();
  Eigen::ComplexEigenSolver<Mat> es(T, false);
  return es.eigenvalues();
}

// A unimodular eigenvalue spans an invariant subspace on which T is isometric; spectral
// radius below one forces T^n -> 0, which rules such subspaces out.
inline bool purity_check(const Mat& T) {
  defects(T);
  const Vec ev = eigenvalues(T);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > 1.0 - kPurityMargin) return false;
  return true;
}

struct DilationWindow {
  Mat T;
  int K = 0;
  Mat W;
  int eps_minus = 0;  // slot of eps^-_{-1}, left of H
  int eps_plus = 0;   // slot of eps^+_0, right of H
};

// Slots -K..-1, then H, then +1..+K. W moves every defect slot one step left; the central
// unitary takes (H, slot +1) to (slot -1, H); slot -K wraps to slot +K.
inline DilationWindow build_dilation(const Mat& T, int K) {
  if (T.rows() != T.cols()) throw Error(ErrorKind::DimensionMismatch, "T must be square");
  if (K < 2) throw Error(ErrorKind::InvalidInput, "K must be at least 2");
  const DefectPair d = defects(T);
  if (d.rank_T != 1 || d.rank_Tstar != 1) throw Error(ErrorKind::DefectRankNotOne, "defect ranks must both be 1");
  const int m = static_cast<int>(T.rows());
  const Vec e = d.range_T.col(0);
  const Vec f = d.range_Tstar.col(0);
  DilationWindow w;
  w.T = T;
  w.K = K;
  const int n = m + 2 * K;
  w.W = Mat::Zero(n, n);
  auto left = [&](int s) { return K - s; };        // slot -s
  auto right = [&](int s) { return K + m + s - 1; };  // slot +s
  for (int s = 2; s <= K; ++s) {
    w.W(left(s), left(s - 1)) = 1.0;
    w.W(right(s - 1), right(s)) = 1.0;
  }
  w.W(right(K), left(K)) = 1.0;
  w.W.block(left(1), K, 1, m) = e.adjoint() * d.D_T;
  w.W(left(1), right(1)) = -(e.adjoint() * T.adjoint() * f)(0, 0);
  w.W.block(K, K, m, m) = T;
  w.W.block(K, right(1), m, 1) = d.D_Tstar * f;
  w.eps_minus = left(1);
  w.eps_plus = right(1);
  return w;
}

// Multiply by the unimodular constant that makes the first nonzero coefficient positive.
inline HardySeries normalize_phase(HardySeries b) {
  const double m = b.c.cwiseAbs().maxCoeff();
  for (int n = 0; n <= b.degree(); ++n) {
    if (std::abs(b.c(n)) > 1e-8 * m) {
      const cplx ph = std::conj(b.c(n)) / std::abs(b.c(n));
      b.c *= ph;
      break;
    }
  }
  return b;
}

// b_hat(n) = <W^{n+1} eps^+_0, eps^-_{-1}> for n = 0..N.
inline HardySeries characteristic_b(const Mat& T, int N, int K = -1) {
  if (K < 0) K = N + 2;
  if (!purity_check(T)) throw Error(ErrorKind::NotPure, "T has a unimodular eigenvalue");
  const DilationWindow w = build_dilation(T, K);
  Vec v = Vec::Zero(w.W.rows());
  v(w.eps_plus) = 1.0;
  HardySeries b(N);
  for (int n = 0; n <= N; ++n) {
    v = w.W * v;
    b.c(n) = v(w.eps_minus);
  }
  return normalize_phase(b);
}

// Optimal pairing of two small spectra; brute force up to 8 values, greedy beyond.
inline double matched_spectrum_defect(const Vec& a, const Vec& b) {
  const int n = static_cast<int>(a.size());
  if (n != b.size()) return INFINITY;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  double best = INFINITY;
  if (n <= 8) {
    do {
      double worst = 0.0;
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(a(i) - b(p[i])));
      best = std::min(best, worst);
    } while (std::next_permutation(p.begin(), p.end()));
    return n == 0 ? 0.0 : best;
  }
  std::vector<bool> used(n, false);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    int arg = -1;
    for (int j = 0; j < n; ++j)
      if (!used[j] && (arg < 0 || std::abs(a(i) - b(j)) < std::abs(a(i) - b(arg)))) arg = j;
    used[arg] = true;
    worst = std::max(worst, std::abs(a(i) - b(arg)));
  }
  return worst;
}

struct ModelReport {
  HardySeries b_coeffs;
  Vec spectrum_T;
  Vec spectrum_Xb;
  std::vector<double> zero_match_residuals;  // |b(conj mu)|
  bool rank_match = false;
  int rank = 0;
  double spectrum_defect = 0.0;
  double inner_defect = 0.0;  // max ||b| - 1| on the grid
};

inline ModelReport model_roundtrip(const Mat& T, int N) {
  ModelReport r;
  r.b_coeffs = characteristic_b(T, N);
  const HbSpace sp = build(r.b_coeffs);
  r.rank = sp.rank;
  r.rank_match = sp.rank == T.rows();
  r.spectrum_T = eigenvalues(T);
  r.spectrum_Xb = eigenvalues(xb_matrix(sp));
  r.spectrum_defect = matched_spectrum_defect(r.spectrum_T, r.spectrum_Xb);
  for (Eigen::Index i = 0; i < r.spectrum_T.size(); ++i)
    r.zero_match_residuals.push_back(std::abs(eval(r.b_coeffs, std::conj(r.spectrum_T(i)))));
  const int M = std::max(kDefaultGrid, static_cast<int>(std::bit_ceil(static_cast<unsigned>(4 * (N + 1)))));
  const BoundaryGrid g = to_boundary(r.b_coeffs, M);
  r.inner_defect = (g.samples.cwiseAbs().array() - 1.0).abs().maxCoeff();
  return r;
}

struct DefectDims {
  int d1 = 0;  // rank of I - X*X
  int d2 = 0;  // rank of I - XX*
};

inline DefectDims xb_defect_dims(const HbSpace& sp, double cutoff = 1e-8) {
  const Mat X = xb_matrix(sp);
  const Mat I = Mat::Identity(X.rows(), X.cols());
  auto count = [&](const Mat& A) {
    if (A.rows() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(A), Eigen::EigenvaluesOnly);
    return static_cast<int>((es.eigenvalues().array() > cutoff).count());
  };
  return {count(I - X.adjoint() * X), count(I - X * X.adjoint())};
}

struct IsometricPartReport {
  double max_modulus = 0.0;
  bool pass = false;
};

inline IsometricPartReport no_isometric_part_check(const HbSpace& sp) {
  IsometricPartReport r;
  const Vec ev = eigenvalues(xb_matrix(sp));
  r.max_modulus = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  r.pass = r.max_modulus <= 1.0 - kPurityMargin;
  return r;
}

struct OmegaReport {
  double unitarity_defect = 0.0;
  double intertwining_defect = 0.0;  // max ||Omega X_btilde v - X_b* Omega v|| / ||v||
  double mapping_defect = 0.0;       // Omega K_btilde inside K_b
  int frame_size = 0;
  int dim_K = 0;
};

namespace detail {

// K_b on the cyclic grid: orthocomplement of (H^2_- + 0) + {bf + Delta f} inside
// L^2(grid) + (samples on the support of Delta). Coordinates are samples / sqrt(M).
struct GridModel {
  int M = 0;
  Vec b, delta;
  std::vector<int> support;
  Mat Q;  // orthonormal basis of the removed subspace

  int dim() const { return M + static_cast<int>(support.size()); }

  Vec restrict_second(const Vec& g) const {
    Vec out(support.size());
    for (size_t i = 0; i < support.size(); ++i) out(i) = g(support[i]);
    return out;
  }
  Vec extend_second(const Vec& g) const {
    Vec out = Vec::Zero(M);
    for (size_t i = 0; i < support.size(); ++i) out(support[i]) = g(i);
    return out;
  }
  Vec project(const Vec& v) const { return v - Q * (Q.adjoint() * v); }
  // multiplication by e^{i s t} on both components
  Vec rotate(const Vec& v, int s) const {
    Vec out = v;
    for (int j = 0; j < M; ++j) out(j) *= std::polar(1.0, 2.0 * std::numbers::pi * s * j / M);
    for (size_t i = 0; i < support.size(); ++i)
      out(M + i) *= std::polar(1.0, 2.0 * std::numbers::pi * s * support[i] / M);
    return out;
  }
};

inline GridModel grid_model(const Vec& b, const Vec& delta) {
  GridModel g;
  g.M = static_cast<int>(b.size());
  g.b = b;
  g.delta = delta;
  for (int j = 0; j < g.M; ++j)
    if (delta(j) != cplx(0.0)) g.support.push_back(j);
  const double s = 1.0 / std::sqrt(double(g.M));
  Mat gen = Mat::Zero(g.dim(), g.M);
  for (int k = -g.M / 2; k < g.M / 2; ++k) {
    Vec e(g.M);
    for (int j = 0; j < g.M; ++j) e(j) = std::polar(s, 2.0 * std::numbers::pi * k * j / g.M);
    const int col = k + g.M / 2;
    if (k < 0) {
      gen.col(col).head(g.M) = e;
    } else {
      gen.col(col).head(g.M) = b.cwiseProduct(e);
      gen.col(col).tail(g.support.size()) = g.restrict_second(delta.cwiseProduct(e));
    }
  }
  g.Q = range_basis(gen);
  return g;
}

}  // namespace detail

inline OmegaReport omega_intertwining_check(const SymbolSpec& spec, int N, int M) {
  if (!is_power_of_two(M)) throw Error(ErrorKind::GridNotSymmetric, "grid size must be even");
  if (M < 4 * (N + 1)) throw Error(ErrorKind::GridTooSmall, "omega check needs M >= 4(N+1)");
  if (is_grid(spec) && native_grid_size(spec) % 2 != 0)
    throw Error(ErrorKind::GridNotSymmetric, "grid symbol has odd size");
  const Classification c = classify(spec, ClassifyOptions{std::max(M, kDefaultGrid), 8, 1 << 12});
  if (c.verdict != Verdict::Extreme) throw Error(ErrorKind::NotExtreme, std::string("classification is ") + to_string(c.verdict));

  const Vec b = boundary_samples(spec, M).samples;
  Vec delta(M), bt(M), dt(M);
  for (int j = 0; j < M; ++j) {
    const double gap = 1.0 - std::norm(b(j));
    delta(j) = gap < 1e-14 ? 0.0 : std::sqrt(gap);
  }
  auto refl = [M](int j) { return (M - j) % M; };
  for (int j = 0; j < M; ++j) {
    bt(j) = std::conj(b(refl(j)));
    dt(j) = delta(refl(j));
  }
  OmegaReport r;
  for (int j = 0; j < M; ++j) {
    Eigen::Matrix2cd U;
    U << b(j), delta(j), delta(j), -std::conj(b(j));
    r.unitarity_defect = std::max(r.unitarity_defect, (U.adjoint() * U - Eigen::Matrix2cd::Identity()).norm());
  }
  const detail::GridModel Kb = detail::grid_model(b, delta);
  const detail::GridModel Kt = detail::grid_model(bt, dt);
  r.dim_K = Kb.dim() - static_cast<int>(Kb.Q.cols());

  // Omega from the btilde ambient to the b ambient
  auto omega = [&](const Vec& v) {
    const Vec f = v.head(M);
    const Vec g = Kt.extend_second(v.tail(Kt.support.size()));
    Vec first(M), second(M);
    for (int j = 0; j < M; ++j) {
      const cplx zbar = std::polar(1.0, -2.0 * std::numbers::pi * j / M);
      const cplx fr = f(refl(j)), gr = g(refl(j));
      first(j) = zbar * (b(j) * fr + delta(j) * gr);
      second(j) = zbar * (delta(j) * fr - std::conj(b(j)) * gr);
    }
    Vec out(Kb.dim());
    out.head(M) = first;
    out.tail(Kb.support.size()) = Kb.restrict_second(second);
    return out;
  };

  const double s = 1.0 / std::sqrt(double(M));
  auto consider = [&](const Vec& raw) {
    const Vec v = Kt.project(raw);
    const double nv = v.norm();
    if (nv < 1e-8) return;
    ++r.frame_size;
    const Vec lhs = omega(Kt.project(Kt.rotate(v, -1)));
    const Vec ov = omega(v);
    const Vec rhs = Kb.project(Kb.rotate(ov, 1));
    r.intertwining_defect = std::max(r.intertwining_defect, (lhs - rhs).norm() / nv);
    r.mapping_defect = std::max(r.mapping_defect, (ov - Kb.project(ov)).norm() / nv);
  };
  for (int k = -N / 2; k <= N / 2; ++k) {
    Vec e(M);
    for (int j = 0; j < M; ++j) e(j) = std::polar(s, 2.0 * std::numbers::pi * k * j / M);
    Vec v1 = Vec::Zero(Kt.dim());
    v1.head(M) = e;
    consider(v1);
    if (!Kt.support.empty()) {
      Vec v2 = Vec::Zero(Kt.dim());
      v2.tail(Kt.support.size()) = Kt.restrict_second(e);
      consider(v2);
    }
  }
  return r;
}

}  // namespace dbr

#endif  // DBR_EXTREME_MODEL_HPP
