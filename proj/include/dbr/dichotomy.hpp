#ifndef DBR_DICHOTOMY_HPP
#define DBR_DICHOTOMY_HPP

// Extreme/nonextreme classification and the outer companion a with |a|^2 + |b|^2 = 1.

#include <cmath>
#include <optional>
#include <vector>

#include "dbr/toeplitz.hpp"

namespace dbr {

inline constexpr double kLogZeroSentinel = -1e300;
inline constexpr double kInnerTolerance = 1e-8;
inline constexpr double kCauchyTolerance = 1e-3;
inline constexpr double kDivergenceThreshold = -40.0;
inline constexpr int kDefaultOuterGrid = 1 << 22;

enum class Verdict { Extreme, Nonextreme, Indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Extreme: return "Extreme";
    case Verdict::Nonextreme: return "Nonextreme";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "Unknown";
}

// Delta = (1 - |b|^2)^{1/2} sample by sample.
inline BoundaryGrid delta_grid(const BoundaryGrid& b) {
  BoundaryGrid d{Vec(b.size()), b.staggered};
  for (int j = 0; j < b.size(); ++j) d.samples(j) = std::sqrt(std::max(0.0, 1.0 - std::norm(b.samples(j))));
  return d;
}

inline double szego_integral(const BoundaryGrid& delta) {
  double sum = 0.0;
  for (int j = 0; j < delta.size(); ++j) {
    const double v = delta.samples(j).real();
    sum += v > 0.0 ? std::log(v) : kLogZeroSentinel;
  }
  return sum / delta.size();
}

struct ClassifyOptions {
  int M = kDefaultGrid;
  int N = kDefaultDegree;          // degree of the returned companion
  int outer_grid = kDefaultOuterGrid;
};

struct Classification {
  Verdict verdict = Verdict::Indeterminate;
  std::vector<double> szego_values;
  std::optional<HardySeries> a;
  bool inner = false;              // decided by the fast path
  double inner_defect = 0.0;       // max ||b| - 1| on the grid
  double modulus_residual = 0.0;   // max ||a|^2 + |b|^2 - 1| on the grid
};

namespace detail {

// Three Szego values: M, 2M, 4M staggered for closed forms, decimations for grid symbols.
inline std::vector<double> szego_sequence(const SymbolSpec& b, int M) {
  std::vector<double> out;
  if (is_grid(b)) {
    const int size = native_grid_size(b);
    for (int m : {size / 4, size / 2, size}) out.push_back(szego_integral(delta_grid(boundary_samples(b, m))));
  } else {
    for (int m : {M, 2 * M, 4 * M}) out.push_back(szego_integral(delta_grid(boundary_samples(b, m, true))));
  }
  return out;
}

inline BoundaryGrid outer_sampling(const SymbolSpec& b, int M) {
  if (is_grid(b)) return boundary_samples(b, native_grid_size(b));
  return boundary_samples(b, M, true);
}

// exp of sum g_k z^k by n a_n = sum_{k=1}^n k g_k a_{n-k}.
inline HardySeries series_exp(const HardySeries& g) {
  const int N = g.degree();
  HardySeries a(N);
  a.c(0) = std::exp(g.c(0));
  for (int n = 1; n <= N; ++n) {
    cplx acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += static_cast<double>(k) * g.c(k) * a.c(n - k);
    a.c(n) = acc / static_cast<double>(n);
  }
  return a;
}

struct OuterResult {
  HardySeries a;
  double modulus_residual = 0.0;
};

inline OuterResult outer_series(const SymbolSpec& b, int N, int M) {
  const BoundaryGrid bs = outer_sampling(b, M);
  if (bs.size() < 2 * (N + 1)) throw Error(ErrorKind::GridTooSmall, "outer grid must exceed 2(N+1)");
  const BoundaryGrid delta = delta_grid(bs);
  BoundaryGrid logd{Vec(delta.size()), delta.staggered};
  for (int j = 0; j < delta.size(); ++j) {
    const double v = delta.samples(j).real();
    if (v <= 0.0) throw Error(ErrorKind::ClassifiedExtreme, "Delta vanishes on a grid node");
    logd.samples(j) = std::log(v);
  }
  const Vec c = fourier_coefficients(logd);
  HardySeries g(N);
  g.c(0) = c(0).real();
  for (int k = 1; k <= N; ++k) g.c(k) = 2.0 * c(k);
  OuterResult r{series_exp(g), 0.0};
  const int Mc = std::max(kDefaultGrid, static_cast<int>(std::bit_ceil(static_cast<unsigned>(4 * (N + 1)))));
  const BoundaryGrid ag = to_boundary(r.a, Mc, true);
  const BoundaryGrid bg = is_grid(b) ? BoundaryGrid{} : boundary_samples(b, Mc, true);
  if (!is_grid(b)) {
    for (int j = 0; j < Mc; ++j)
      r.modulus_residual = std::max(r.modulus_residual,
                                    std::abs(std::norm(ag.samples(j)) + std::norm(bg.samples(j)) - 1.0));
  } else {
    const BoundaryGrid ab = to_boundary(resized(r.a, std::min(N, bs.size() / 2 - 1)), bs.size());
    for (int j = 0; j < bs.size(); ++j)
      r.modulus_residual = std::max(r.modulus_residual,
                                    std::abs(std::norm(ab.samples(j)) + std::norm(bs.samples(j)) - 1.0));
  }
  return r;
}

}  // namespace detail

inline Classification classify(const SymbolSpec& b, const ClassifyOptions& opt = {}) {
  const int M = is_grid(b) ? native_grid_size(b) : opt.M;
  require_unit_ball(b, M);
  Classification c;
  const BoundaryGrid bs = boundary_samples(b, M);
  for (int j = 0; j < bs.size(); ++j)
    c.inner_defect = std::max(c.inner_defect, std::abs(1.0 - std::abs(bs.samples(j))));
  if (c.inner_defect <= kInnerTolerance) {
    c.inner = true;
    c.verdict = Verdict::Extreme;
    return c;
  }
  c.szego_values = detail::szego_sequence(b, M);
  const auto& s = c.szego_values;
  for (double v : s)
    if (v < -1e200) {  // a sentinel entered the mean
      c.verdict = Verdict::Extreme;
      return c;
    }
  if (std::abs(s[1] - s[0]) <= kCauchyTolerance && std::abs(s[2] - s[1]) <= kCauchyTolerance) {
    c.verdict = Verdict::Nonextreme;
    const auto r = detail::outer_series(b, opt.N, opt.outer_grid);
    c.a = r.a;
    c.modulus_residual = r.modulus_residual;
  } else if (s[0] > s[1] && s[1] > s[2] && s[2] < kDivergenceThreshold) {
    c.verdict = Verdict::Extreme;
  }
  return c;
}

inline HardySeries outer_companion(const SymbolSpec& b, int N, int M = kDefaultOuterGrid) {
  ClassifyOptions opt;
  opt.N = N;
  opt.outer_grid = M;
  Classification c = classify(b, opt);
  if (c.verdict != Verdict::Nonextreme)
    throw Error(ErrorKind::ClassifiedExtreme, std::string("classification is ") + to_string(c.verdict));
  return *c.a;
}

// Grid route: samples of the outer function with the given modulus, exp(c0 + 2 sum c_k z^k).
inline BoundaryGrid outer_from_modulus(const BoundaryGrid& modulus) {
  const int M = modulus.size();
  if (modulus.staggered || !is_power_of_two(M))
    throw Error(ErrorKind::InvalidInput, "outer_from_modulus expects an unstaggered power-of-two grid");
  BoundaryGrid logm{Vec(M), false};
  for (int j = 0; j < M; ++j) {
    const double v = modulus.samples(j).real();
    if (v <= 0.0) throw Error(ErrorKind::ClassifiedExtreme, "modulus vanishes on a grid node");
    logm.samples(j) = std::log(v);
  }
  const Vec c = fourier_coefficients(logm);
  Vec g = Vec::Zero(M);
  g(0) = c(0).real();
  for (int k = 1; k < M / 2; ++k) g(k) = 2.0 * c(k);
  g(M / 2) = c(M / 2).real();
  const Vec vals = detail::fft_backward(g);
  BoundaryGrid out{Vec(M), false};
  for (int j = 0; j < M; ++j) out.samples(j) = std::exp(vals(j));
  return out;
}

// Numerical ranks of {Delta e^{ikt}: 0 <= k <= L} and {Delta e^{ikt}: |k| <= L}.
struct DeltaSpanRanks {
  int analytic_rank = 0;
  int bilateral_rank = 0;
};

inline DeltaSpanRanks delta_span_ranks(const SymbolSpec& b, int L, int M) {
  const BoundaryGrid delta = delta_grid(is_grid(b) ? boundary_samples(b, native_grid_size(b))
                                                   : boundary_samples(b, M));
  const int m = delta.size();
  auto frame = [&](int lo, int hi) {
    Mat F(m, hi - lo + 1);
    for (int k = lo; k <= hi; ++k)
      for (int j = 0; j < m; ++j)
        F(j, k - lo) = delta.samples(j) * std::polar(1.0, k * delta.node(j)) / std::sqrt(double(m));
    return F;
  };
  DeltaSpanRanks r;
  r.analytic_rank = static_cast<int>(range_basis(frame(0, L)).cols());
  r.bilateral_rank = static_cast<int>(range_basis(frame(-L, L)).cols());
  return r;
}

}  // namespace dbr

#endif  // DBR_DICHOTOMY_HPP
