#ifndef DBR_RANDOM_HPP
#define DBR_RANDOM_HPP

// Seeded draws for property tests: disk points, series, contractions, unitaries.

#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "dbr/toeplitz.hpp"

namespace dbr::rnd {

using Engine = std::mt19937_64;

inline Engine engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

inline double uniform(Engine& g, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(Engine& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline cplx gaussian(Engine& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(g);
  return {re, n(g)};
}

// Uniform in the disk of radius r.
inline cplx disk_point(Engine& g, double r) {
  const double rho = r * std::sqrt(uniform(g));
  return std::polar(rho, uniform(g, 0.0, 2.0 * std::numbers::pi));
}

inline Vec gaussian_vector(Engine& g, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = gaussian(g);
  return v;
}

inline Mat gaussian_matrix(Engine& g, int m, int n) {
  Mat A(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) A(i, j) = gaussian(g);
  return A;
}

inline HardySeries series(Engine& g, int N) { return HardySeries(gaussian_vector(g, N + 1)); }

inline Mat unitary(Engine& g, int n) {
  Eigen::HouseholderQR<Mat> qr(gaussian_matrix(g, n, n));
  Mat Q = qr.householderQ();
  const Mat R = qr.matrixQR();
  for (int i = 0; i < n; ++i)
    if (std::abs(R(i, i)) > 0.0) Q.col(i) *= std::conj(R(i, i)) / std::abs(R(i, i));
  return Q;
}

// U diag(s) V* with the given singular values.
inline Mat with_singular_values(Engine& g, int m, int n, const std::vector<double>& s) {
  const Mat U = unitary(g, m), V = unitary(g, n);
  Mat D = Mat::Zero(m, n);
  for (int i = 0; i < std::min<int>({m, n, static_cast<int>(s.size())}); ++i) D(i, i) = s[i];
  return U * D * V.adjoint();
}

// Strict contraction with norm drawn from [0.3, 0.95].
inline Mat contraction(Engine& g, int m, int n) {
  const Mat A = gaussian_matrix(g, m, n);
  return A * (uniform(g, 0.3, 0.95) / spectral_norm(A));
}

// Contraction whose singular values include exact 1 and 0 entries, so that M(T) and C(T) overlap
// only partially and the defect ranks are deficient.
inline Mat mixed_contraction(Engine& g, int n) {
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    const int kind = uniform_int(g, 0, 2);
    s[i] = kind == 0 ? 1.0 : kind == 1 ? 0.0 : uniform(g, 0.2, 0.9);
  }
  return with_singular_values(g, n, n, s);
}

// Polynomial of degree d scaled to grid sup-norm r.
inline Polynomial polynomial_in_ball(Engine& g, int d, double r) {
  Polynomial p{std::vector<cplx>(d + 1)};
  for (auto& c : p.coeffs) c = gaussian(g);
  const double s = sup_on_grid(SymbolSpec{p});
  for (auto& c : p.coeffs) c *= r / s;
  return p;
}

inline Blaschke blaschke(Engine& g, int d, double rmax) {
  Blaschke b{std::vector<cplx>(d), std::polar(1.0, uniform(g, 0.0, 2.0 * std::numbers::pi))};
  for (auto& z : b.zeros) z = disk_point(g, rmax);
  return b;
}

}  // namespace dbr::rnd

#endif  // DBR_RANDOM_HPP