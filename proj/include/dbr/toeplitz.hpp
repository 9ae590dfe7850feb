#ifndef DBR_TOEPLITZ_HPP
#define DBR_TOEPLITZ_HPP

// Symbols and finite compressions of Toeplitz operators.

#include <algorithm>
#include <bit>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dbr/hardy.hpp"
#include "dbr/linalg.hpp"

namespace dbr {

struct Polynomial {
  std::vector<cplx> coeffs;
};
struct Rational {
  std::vector<cplx> num;
  std::vector<cplx> den;
};
struct Blaschke {
  std::vector<cplx> zeros;
  cplx factor{1.0, 0.0};
};
struct Constant {
  cplx value;
};
struct Grid {
  BoundaryGrid grid;
};

using SymbolSpec = std::variant<Polynomial, Rational, Blaschke, Constant, Grid>;

inline constexpr double kUnitBallTolerance = 1e-9;

inline std::vector<cplx> trim_trailing_zeros(std::vector<cplx> p) {
  while (!p.empty() && p.back() == cplx(0.0)) p.pop_back();
  return p;
}

// Roots of sum p_k z^k from the companion matrix.
inline std::vector<cplx> polynomial_roots(std::vector<cplx> p) {
  p = trim_trailing_zeros(std::move(p));
  const int d = static_cast<int>(p.size()) - 1;
  if (d <= 0) return {};
  Mat C = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) C(i, d - 1) = -p[i] / p[d];
  Eigen::ComplexEigenSolver<Mat> es(C);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return roots;
}

inline void validate(const SymbolSpec& s) {
  if (const auto* r = std::get_if<Rational>(&s)) {
    auto den = trim_trailing_zeros(r->den);
    if (den.empty()) throw Error(ErrorKind::InvalidInput, "rational symbol with zero denominator");
    for (const auto& z : polynomial_roots(den))
      if (std::abs(z) <= 1.0 + kDiskMargin)
        throw Error(ErrorKind::DenominatorZeroInDisk, "denominator vanishes in the closed disk");
  } else if (const auto* b = std::get_if<Blaschke>(&s)) {
    for (const auto& z : b->zeros)
      if (std::abs(z) >= 1.0) throw Error(ErrorKind::InvalidInput, "Blaschke zero outside the open disk");
    if (std::abs(std::abs(b->factor) - 1.0) > 1e-12)
      throw Error(ErrorKind::InvalidInput, "Blaschke factor must be unimodular");
  } else if (const auto* g = std::get_if<Grid>(&s)) {
    if (!is_power_of_two(g->grid.size()) || g->grid.size() < 8)
      throw Error(ErrorKind::GridTooSmall, "grid symbol size must be a power of two >= 8");
  }
}

inline cplx poly_value(const std::vector<cplx>& p, cplx z) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Pointwise value of a closed-form symbol (|z| <= 1). Grid symbols have no pointwise form.
inline cplx symbol_value(const SymbolSpec& s, cplx z) {
  return std::visit(
      [&](const auto& v) -> cplx {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return poly_value(v.coeffs, z);
        } else if constexpr (std::is_same_v<T, Rational>) {
          return poly_value(v.num, z) / poly_value(v.den, z);
        } else if constexpr (std::is_same_v<T, Blaschke>) {
          cplx acc = v.factor;
          for (const auto& l : v.zeros) acc *= (z - l) / (1.0 - std::conj(l) * z);
          return acc;
        } else if constexpr (std::is_same_v<T, Constant>) {
          return v.value;
        } else {
          throw Error(ErrorKind::InvalidInput, "grid symbols have no closed form");
        }
      },
      s);
}

inline bool is_grid(const SymbolSpec& s) { return std::holds_alternative<Grid>(s); }

// Boundary samples on M nodes. Grid symbols are decimated to M when M divides their size.
inline BoundaryGrid boundary_samples(const SymbolSpec& s, int M, bool staggered = false) {
  if (!is_power_of_two(M)) throw Error(ErrorKind::GridTooSmall, "grid size must be a power of two");
  if (const auto* g = std::get_if<Grid>(&s)) {
    const int size = g->grid.size();
    if (staggered || g->grid.staggered)
      throw Error(ErrorKind::InvalidInput, "grid symbols are sampled on the nodes 2*pi*j/M only");
    if (M > size || size % M != 0)
      throw Error(ErrorKind::GridTooSmall, "grid symbol has fewer samples than requested");
    const int step = size / M;
    BoundaryGrid out{Vec(M), false};
    for (int j = 0; j < M; ++j) out.samples(j) = g->grid.samples(j * step);
    return out;
  }
  return sample_function(M, staggered, [&](cplx z) { return symbol_value(s, z); });
}

inline int native_grid_size(const SymbolSpec& s) {
  if (const auto* g = std::get_if<Grid>(&s)) return g->grid.size();
  return 0;
}

inline double sup_on_grid(const SymbolSpec& s, int M = kDefaultGrid) {
  if (is_grid(s)) M = native_grid_size(s);
  return boundary_samples(s, M).samples.cwiseAbs().maxCoeff();
}

inline void require_unit_ball(const SymbolSpec& s, int M = kDefaultGrid) {
  validate(s);
  const double sup = sup_on_grid(s, M);
  if (sup > 1.0 + kUnitBallTolerance)
    throw Error(ErrorKind::NotInUnitBall, "sup on grid is " + std::to_string(sup));
}

struct SymbolExpansion {
  HardySeries series;
  double tail = 0.0;  // largest dropped coefficient among degrees N+1..4N
};

inline SymbolExpansion symbol_expansion(const SymbolSpec& s, int N) {
  validate(s);
  const int L = 4 * N;
  HardySeries full(L);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          for (int n = 0; n < static_cast<int>(v.coeffs.size()) && n <= L; ++n) full.c(n) = v.coeffs[n];
        } else if constexpr (std::is_same_v<T, Rational>) {
          const auto den = trim_trailing_zeros(v.den);
          for (int n = 0; n <= L; ++n) {
            cplx acc = n < static_cast<int>(v.num.size()) ? v.num[n] : cplx(0.0);
            for (int k = 1; k <= n && k < static_cast<int>(den.size()); ++k) acc -= den[k] * full.c(n - k);
            full.c(n) = acc / den[0];
          }
        } else if constexpr (std::is_same_v<T, Blaschke>) {
          auto zeros = v.zeros;
          std::stable_sort(zeros.begin(), zeros.end(),
                           [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
          full.c(0) = v.factor;
          for (const auto& l : zeros) {
            HardySeries f(L);
            f.c(0) = -l;
            cplx p = 1.0 - std::norm(l);
            for (int n = 1; n <= L; ++n) {
              f.c(n) = p;
              p *= std::conj(l);
            }
            full = multiply(full, f, L);
          }
        } else if constexpr (std::is_same_v<T, Constant>) {
          full.c(0) = v.value;
        } else {
          const int M = v.grid.size();
          const int top = std::min(L, M / 2 - 1);
          full = resized(from_boundary(v.grid, top), L);
        }
      },
      s);
  SymbolExpansion out;
  out.series = resized(full, N);
  out.tail = L > N ? full.c.tail(L - N).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

inline HardySeries symbol_coeffs(const SymbolSpec& s, int N) {
  require_unit_ball(s, std::max(kDefaultGrid, 4 * (N + 1)));
  return symbol_expansion(s, N).series;
}

inline Mat toeplitz_analytic(const HardySeries& b) {
  const int n = b.degree() + 1;
  Mat T = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) T(i, j) = b.c(i - j);
  return T;
}

inline Mat toeplitz_coanalytic(const HardySeries& b) { return toeplitz_analytic(b).adjoint(); }

inline Mat toeplitz_general(const BoundaryGrid& g, int N) {
  const int M = g.size();
  if (!is_power_of_two(M) || M < 2 * (N + 1))
    throw Error(ErrorKind::GridTooSmall, "toeplitz_general needs M >= 2(N+1)");
  const Vec X = fourier_coefficients(g);
  Mat T(N + 1, N + 1);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      const int k = i - j;
      T(i, j) = X((k + M) % M);
    }
  return T;
}

inline Mat shift_matrix(int N) {
  Mat S = Mat::Zero(N + 1, N + 1);
  for (int i = 1; i <= N; ++i) S(i, i - 1) = 1.0;
  return S;
}

// Index of the last coefficient above 1e-15 relative to the largest one.
inline int effective_degree(const HardySeries& h) {
  const double m = h.c.cwiseAbs().maxCoeff();
  for (int n = h.degree(); n >= 0; --n)
    if (std::abs(h.c(n)) > 1e-15 * m) return n;
  return 0;
}

struct ProductCheck {
  double defect = 0.0;  // on the exactness window
  int window = 0;       // last index of the window
};

// ||T_psi T_phi - T_{psi phi}|| on degrees 0..N - deg psi - deg phi; psi is conjugated when requested.
inline ProductCheck toeplitz_product_check(const SymbolSpec& psi, const SymbolSpec& phi, int N,
                                           bool conjugate_psi = false) {
  const int M = std::max(kDefaultGrid, static_cast<int>(std::bit_ceil(static_cast<unsigned>(8 * (N + 1)))));
  const HardySeries p = symbol_expansion(psi, N).series;
  const HardySeries f = symbol_expansion(phi, N).series;
  const Mat Tpsi = conjugate_psi ? toeplitz_coanalytic(p) : toeplitz_analytic(p);
  const Mat Tphi = toeplitz_analytic(f);
  BoundaryGrid gp = is_grid(psi) ? boundary_samples(psi, native_grid_size(psi)) : boundary_samples(psi, M);
  BoundaryGrid gf = is_grid(phi) ? boundary_samples(phi, native_grid_size(phi)) : boundary_samples(phi, M);
  if (gp.size() != gf.size()) throw Error(ErrorKind::DimensionMismatch, "symbol grids differ in size");
  if (conjugate_psi) gp.samples = gp.samples.conjugate();
  BoundaryGrid prod{gp.samples.cwiseProduct(gf.samples), false};
  const Mat Tprod = toeplitz_general(prod, N);
  ProductCheck out;
  out.window = N - effective_degree(p) - effective_degree(f);
  if (out.window < 0) return out;
  const int w = out.window + 1;
  out.defect = spectral_norm((Tpsi * Tphi - Tprod).topLeftCorner(w, w));
  return out;
}

}  // namespace dbr

#endif  // DBR_TOEPLITZ_HPP
