#ifndef DBR_HARDY_HPP
#define DBR_HARDY_HPP

// Truncated Hardy space arithmetic on coefficient vectors and boundary grids.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "dbr/error.hpp"

namespace dbr {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using OperatorMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultDegree = 128;
inline constexpr int kDefaultGrid = 1024;
inline constexpr double kDiskMargin = 1e-9;

// Coefficients c[0..N] of a polynomial truncation of an H^2 function.
struct HardySeries {
  Vec c;

  HardySeries() = default;
  explicit HardySeries(int N) : c(Vec::Zero(N + 1)) {}
  explicit HardySeries(Vec coeffs) : c(std::move(coeffs)) {}
  HardySeries(std::initializer_list<cplx> coeffs) : c(static_cast<Eigen::Index>(coeffs.size())) {
    Eigen::Index i = 0;
    for (const auto& v : coeffs) c(i++) = v;
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  cplx operator[](int n) const { return c(n); }
  cplx& operator[](int n) { return c(n); }
  double norm() const { return c.norm(); }
};

// Samples at t_j = 2*pi*j/M, or at t_j = 2*pi*(j + 1/2)/M when staggered.
struct BoundaryGrid {
  Vec samples;
  bool staggered = false;

  int size() const { return static_cast<int>(samples.size()); }
  double node(int j) const {
    return 2.0 * std::numbers::pi * (j + (staggered ? 0.5 : 0.0)) / size();
  }
};

inline bool is_power_of_two(long m) { return m > 0 && (m & (m - 1)) == 0; }

inline void require_disk(cplx lambda) {
  if (std::abs(lambda) >= 1.0 - kDiskMargin)
    throw Error(ErrorKind::PointOutsideDisk, "|lambda| must be below 1 - 1e-9");
}

// Copy of h with degree N, zero padded or truncated.
inline HardySeries resized(const HardySeries& h, int N) {
  HardySeries out(N);
  const int n = std::min(N, h.degree());
  if (n >= 0) out.c.head(n + 1) = h.c.head(n + 1);
  return out;
}

inline cplx eval(const HardySeries& h, cplx lambda) {
  require_disk(lambda);
  cplx acc = 0.0;
  for (int n = h.degree(); n >= 0; --n) acc = acc * lambda + h.c(n);
  return acc;
}

// Horner evaluation without the disk restriction (boundary sampling, testing).
inline cplx eval_unchecked(const HardySeries& h, cplx z) {
  cplx acc = 0.0;
  for (int n = h.degree(); n >= 0; --n) acc = acc * z + h.c(n);
  return acc;
}

inline HardySeries szego_kernel(cplx lambda, int N) {
  require_disk(lambda);
  HardySeries k(N);
  cplx p = 1.0;
  for (int n = 0; n <= N; ++n) {
    k.c(n) = p;
    p *= std::conj(lambda);
  }
  return k;
}

// <f, g> = sum f_n conj(g_n)
inline cplx h2_inner(const HardySeries& f, const HardySeries& g) {
  if (f.degree() != g.degree())
    throw Error(ErrorKind::DegreeMismatch, "h2_inner needs equal truncation degrees");
  return g.c.dot(f.c);
}

inline HardySeries backshift(const HardySeries& h) {
  HardySeries out(h.degree());
  if (h.degree() > 0) out.c.head(h.degree()) = h.c.tail(h.degree());
  return out;
}

// Drops the top coefficient of h.
inline HardySeries forward_shift(const HardySeries& h) {
  HardySeries out(h.degree());
  if (h.degree() > 0) out.c.tail(h.degree()) = h.c.head(h.degree());
  return out;
}

// Product truncated at degree N.
inline HardySeries multiply(const HardySeries& f, const HardySeries& g, int N) {
  HardySeries out(N);
  for (int i = 0; i <= std::min(N, f.degree()); ++i) {
    if (f.c(i) == cplx(0.0)) continue;
    for (int j = 0; j <= std::min(N - i, g.degree()); ++j) out.c(i + j) += f.c(i) * g.c(j);
  }
  return out;
}

namespace detail {

inline Vec fft_forward(const Vec& x) {
  Eigen::FFT<double> fft;
  std::vector<cplx> in(x.data(), x.data() + x.size()), out;
  fft.fwd(out, in);
  return Eigen::Map<Vec>(out.data(), static_cast<Eigen::Index>(out.size()));
}

// Unscaled inverse: x_j = sum_k X_k exp(2 pi i j k / M).
inline Vec fft_backward(const Vec& X) {
  Eigen::FFT<double> fft;
  std::vector<cplx> in(X.data(), X.data() + X.size()), out;
  fft.inv(out, in);
  Vec v = Eigen::Map<Vec>(out.data(), static_cast<Eigen::Index>(out.size()));
  return v * static_cast<double>(X.size());
}

inline int signed_frequency(int k, int M) { return k < M / 2 ? k : k - M; }

}  // namespace detail

// Two-sided Fourier coefficients phi_hat(k), stored at index k mod M, k in [-M/2, M/2).
inline Vec fourier_coefficients(const BoundaryGrid& g) {
  const int M = g.size();
  if (!is_power_of_two(M)) throw Error(ErrorKind::GridTooSmall, "grid size must be a power of two");
  Vec X = detail::fft_forward(g.samples) / static_cast<double>(M);
  if (g.staggered) {
    for (int k = 0; k < M; ++k) {
      const double f = detail::signed_frequency(k, M);
      X(k) *= std::polar(1.0, -std::numbers::pi * f / M);
    }
  }
  return X;
}

inline BoundaryGrid to_boundary(const HardySeries& h, int M, bool staggered = false) {
  const int N = h.degree();
  if (!is_power_of_two(M) || M < 2 * (N + 1))
    throw Error(ErrorKind::GridTooSmall, "to_boundary needs M >= 2(N+1), a power of two");
  Vec X = Vec::Zero(M);
  for (int n = 0; n <= N; ++n)
    X(n) = staggered ? h.c(n) * std::polar(1.0, std::numbers::pi * n / M) : h.c(n);
  return BoundaryGrid{detail::fft_backward(X), staggered};
}

// Nonnegative frequencies 0..N of the samples (the projection P_+ then truncation).
inline HardySeries from_boundary(const BoundaryGrid& g, int N) {
  const int M = g.size();
  if (!is_power_of_two(M) || M < 2 * (N + 1))
    throw Error(ErrorKind::GridTooSmall, "from_boundary needs M >= 2(N+1), a power of two");
  Vec X = fourier_coefficients(g);
  return HardySeries(Vec(X.head(N + 1)));
}

inline BoundaryGrid sample_function(int M, bool staggered, auto&& f) {
  BoundaryGrid g{Vec(M), staggered};
  for (int j = 0; j < M; ++j) g.samples(j) = f(std::polar(1.0, g.node(j)));
  return g;
}

}  // namespace dbr

#endif  // DBR_HARDY_HPP
