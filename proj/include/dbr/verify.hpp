#ifndef DBR_VERIFY_HPP
#define DBR_VERIFY_HPP

// Property suite over all modules. Every randomized draw comes from one 64-bit seed; each group
// gets its own stream (seed, group index), so results do not depend on scheduling.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "dbr/extreme_model.hpp"
#include "dbr/nonextreme.hpp"
#include "dbr/random.hpp"

namespace dbr::verify {

inline constexpr std::uint64_t kDefaultSeed = 0xDB0B;

struct Check {
  std::string name;
  std::string relation;  // "<=", ">=", "==" or "report"
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct GroupResult {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

class Recorder {
 public:
  void at_most(const std::string& name, double value, double bound) {
    checks_.push_back({name, "<=", value, bound, value <= bound});
  }
  void at_least(const std::string& name, double value, double bound) {
    checks_.push_back({name, ">=", value, bound, value >= bound});
  }
  void equals(const std::string& name, double value, double expected) {
    checks_.push_back({name, "==", value, expected, value == expected});
  }
  // Diagnostic value without a pass/fail decision.
  void report(const std::string& name, double value) { checks_.push_back({name, "report", value, 0.0, true}); }
  std::vector<Check>& checks() { return checks_; }

 private:
  std::vector<Check> checks_;
};

namespace fixtures {

inline SymbolSpec half_plus_half_z() { return Polynomial{{0.5, 0.5}}; }
inline SymbolSpec identity_symbol() { return Polynomial{{0.0, 1.0}}; }
inline SymbolSpec constant_06() { return Constant{0.6}; }
// z (z - 1/2) / (1 - z/2)
inline SymbolSpec blaschke2() { return Rational{{0.0, -0.5, 1.0}, {1.0, -0.5}}; }

// Outer function with modulus sqrt(1 - exp(-2/|t|)) on t_j = 2 pi j / M, t in (-pi, pi];
// Delta = exp(-1/|t|) is not log-integrable.
inline SymbolSpec contact_grid(int M = 4096) {
  BoundaryGrid m{Vec(M), false};
  for (int j = 0; j < M; ++j) {
    double t = 2.0 * std::numbers::pi * j / M;
    if (t > std::numbers::pi) t -= 2.0 * std::numbers::pi;
    const double e = t == 0.0 ? 0.0 : std::exp(-2.0 / std::abs(t));
    m.samples(j) = std::sqrt(1.0 - e);
  }
  return Grid{outer_from_modulus(m)};
}

// Upper-triangular contraction unitarily equivalent to X_u, u the Blaschke product with zeros
// conj(spectrum).
inline Mat triangular_from_spectrum(const std::vector<cplx>& spectrum, int N = 64) {
  Blaschke u{{}, cplx(1.0)};
  for (const auto& mu : spectrum) u.zeros.push_back(std::conj(mu));
  const HbSpace sp = build(SymbolSpec{u}, N);
  Eigen::ComplexSchur<Mat> schur(xb_matrix(sp));
  return schur.matrixT();
}

inline Mat nilpotent2() {
  Mat T(2, 2);
  T << 0.0, 1.0, 0.0, 0.0;
  return T;
}

inline std::vector<cplx> disk_points(rnd::Engine& g, int n, double r) {
  std::vector<cplx> pts;
  for (int i = 0; i < n; ++i) pts.push_back(rnd::disk_point(g, r));
  return pts;
}

}  // namespace fixtures

// Random member of range(G) with unit H^2 norm.
inline HardySeries random_member(const HbSpace& sp, rnd::Engine& g) {
  Vec v = sp.basis * rnd::gaussian_vector(g, sp.rank);
  return HardySeries(Vec(v / v.norm()));
}

// Random member whose top coefficient vanishes, so that S h stays in P_N.
inline HardySeries random_interior_member(const HbSpace& sp, rnd::Engine& g) {
  HardySeries h = random_member(sp, g);
  if (sp.rank == sp.N + 1) h.c(sp.N) = 0.0;
  return h;
}

inline void hardy_group(Recorder& r, rnd::Engine& g) {
  double roundtrip = 0.0;
  for (int N : {7, 31, 127})
    for (int k = 0; k < 5; ++k) {
      const HardySeries h = rnd::series(g, N);
      for (bool st : {false, true}) {
        const HardySeries back = from_boundary(to_boundary(h, 2 * (N + 1), st), N);
        roundtrip = std::max(roundtrip, (back.c - h.c).norm() / h.norm());
      }
    }
  r.at_most("dft_roundtrip_relative", roundtrip, 1e-12);

  double repro = 0.0, adj = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int N = 32;
    const HardySeries h = rnd::series(g, N);
    const cplx l = rnd::disk_point(g, 0.9);
    repro = std::max(repro, std::abs(h2_inner(h, szego_kernel(l, N)) - eval(h, l)));
    HardySeries f = rnd::series(g, N);
    f.c(N) = 0.0;
    const HardySeries q = rnd::series(g, N);
    adj = std::max(adj, std::abs(h2_inner(forward_shift(f), q) - h2_inner(f, backshift(q))));
  }
  r.at_most("h2_reproducing_kernel", repro, 1e-10);
  r.at_most("shift_adjacency", adj, 1e-12);
  r.at_most("szego_kernel_inner", std::abs(h2_inner(szego_kernel(0.3, 64), szego_kernel(0.4, 64)) - 1.0 / 0.88),
            1e-12);
}

inline void toeplitz_group(Recorder& r, rnd::Engine& g) {
  double exact = 0.0, norm_excess = -INFINITY;
  int triangular_violations = 0;
  for (int k = 0; k < 10; ++k) {
    const int N = 32, d = rnd::uniform_int(g, 1, 8);
    const Polynomial p = rnd::polynomial_in_ball(g, d, rnd::uniform(g, 0.3, 1.0));
    const HardySeries b = symbol_coeffs(SymbolSpec{p}, N);
    const Mat B = toeplitz_analytic(b);
    const Mat B4 = toeplitz_analytic(resized(b, 4 * N));
    exact = std::max(exact, (B * B.adjoint() - (B4 * B4.adjoint()).topLeftCorner(N + 1, N + 1)).cwiseAbs().maxCoeff());
    norm_excess = std::max(norm_excess, spectral_norm(B) - sup_on_grid(SymbolSpec{p}));
    if (std::abs(b.c(0)) > 0.0) {
      const bool upper_zero = B.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().isZero(0.0);
      const bool diag_nonzero = B.diagonal().cwiseAbs().minCoeff() > 0.0;
      if (!upper_zero || !diag_nonzero) ++triangular_violations;
    }
  }
  for (const SymbolSpec& s : {fixtures::blaschke2(), fixtures::half_plus_half_z()})
    norm_excess = std::max(norm_excess, spectral_norm(toeplitz_analytic(symbol_coeffs(s, 32))) - sup_on_grid(s));
  r.at_most("triangular_compression_exactness", exact, 1e-14);
  r.at_most("toeplitz_norm_minus_sup", norm_excess, 1e-9);
  r.equals("injective_triangular_violations", triangular_violations, 0);

  const ProductCheck zz = toeplitz_product_check(fixtures::identity_symbol(), fixtures::identity_symbol(), 16, true);
  r.at_most("product_zbar_z", zz.defect, 1e-15);
  const ProductCheck bb = toeplitz_product_check(fixtures::half_plus_half_z(), fixtures::half_plus_half_z(), 32, true);
  r.at_most("product_bbar_b", bb.defect, 1e-12);
  const HardySeries rat = symbol_coeffs(fixtures::blaschke2(), 4);
  const Vec want = (Vec(5) << 0.0, -0.5, 0.75, 0.375, 0.1875).finished();
  r.at_most("rational_long_division", (rat.c - want).cwiseAbs().maxCoeff(), 1e-15);
}

inline void contractive_group(Recorder& r, rnd::Engine& g) {
  double jul = 0.0, inter = 0.0, sq = 0.0, pyth = 0.0, sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int m = rnd::uniform_int(g, 1, 8), n = rnd::uniform_int(g, 1, 8);
    const Mat T = (k % 4 == 3 && m == n) ? rnd::mixed_contraction(g, n) : rnd::contraction(g, m, n);
    const DefectPair d = defects(T);
    jul = std::max(jul, unitarity_defect(julia(T, d)));
    inter = std::max(inter, (T * d.D_T - d.D_Tstar * T).norm());
    sq = std::max(sq, (d.D_T * d.D_T + T.adjoint() * T - Mat::Identity(n, n)).norm());
    const Vec x = rnd::gaussian_vector(g, m);
    const auto [mv, cv] = complementary_decompose(T, x);
    sum = std::max(sum, (mv.ambient + cv.ambient - x).norm());
    pyth = std::max(pyth, std::abs(x.squaredNorm() - mv.preimage.squaredNorm() - cv.preimage.squaredNorm()));
  }
  r.at_most("julia_unitarity", jul, 1e-10);
  r.at_most("defect_intertwining", inter, 1e-10);
  r.at_most("defect_square_identity", sq, 1e-10);
  r.at_most("decomposition_sum", sum, 1e-12);
  r.at_most("decomposition_pythagoras", pyth, 1e-10);

  double lemma = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Mat T = rnd::contraction(g, 5, 5);
    const Vec x1 = rnd::gaussian_vector(g, 5), x2 = rnd::gaussian_vector(g, 5);
    const RenormedVector u{x1, SpaceTag::C, Vec()}, v{x2, SpaceTag::C, Vec()};
    lemma = std::max(lemma, std::abs(renormed_inner(T, u, v) - complementary_inner_dual(T, x1, x2)));
  }
  r.at_most("complementary_two_route", lemma, 1e-8);

  int consistent = 0;
  for (int k = 0; k < 100; ++k) {
    const Mat T = rnd::mixed_contraction(g, 6);
    const DefectPair d = defects(T);
    Vec x = rnd::gaussian_vector(g, 6);
    if (k % 2 == 0) x = d.D_Tstar * x;
    if (membership(T, x, SpaceTag::C).consistent) ++consistent;
  }
  r.equals("membership_dual_consistency", consistent, 100);

  // Competing splits moved inside M(T) and C(T) along an overlap direction.
  double canonical = 0.0, min_excess = INFINITY;
  for (int k = 0; k < 20; ++k) {
    const int n = 4;
    const Mat U = rnd::unitary(g, n), V = rnd::unitary(g, n);
    const std::vector<double> s{1.0, 0.0, rnd::uniform(g, 0.2, 0.9), rnd::uniform(g, 0.2, 0.9)};
    Mat Dg = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) Dg(i, i) = s[i];
    const Mat T = U * Dg * V.adjoint();
    const DefectPair d = defects(T);
    const Mat PT = pinv(T), PD = pinv(d.D_Tstar);
    const Vec x = rnd::gaussian_vector(g, n);
    const Vec x1 = T * (T.adjoint() * x), x2 = d.D_Tstar * (d.D_Tstar * x);
    auto split = [&](const Vec& a, const Vec& b) { return (PT * a).squaredNorm() + (PD * b).squaredNorm(); };
    canonical = std::max(canonical, std::abs(split(x1, x2) - x.squaredNorm()));
    const Vec w = U.col(2 + k % 2);
    const cplx t = std::polar(rnd::uniform(g, 0.05, 0.5), rnd::uniform(g, 0.0, 2.0 * std::numbers::pi));
    min_excess = std::min(min_excess, split(x1 + t * w, x2 - t * w) - x.squaredNorm());
  }
  r.at_most("canonical_split_equality", canonical, 1e-10);
  r.at_least("competing_split_excess", min_excess, 1e-6);

  int rank_changes = 0;
  for (int k = 0; k < 100; ++k) {
    const Mat T = rnd::mixed_contraction(g, 5);
    const Mat Q = rnd::unitary(g, 5);
    const DefectPair a = defects(T), b = defects(Q * T * Q.adjoint());
    if (a.rank_T != b.rank_T || a.rank_Tstar != b.rank_Tstar) ++rank_changes;
  }
  r.equals("defect_rank_conjugation_changes", rank_changes, 0);

  double split_max = 0.0;
  for (int k = 0; k < 20; ++k) {
    const GeometricSplit s = geometric_split_check(rnd::contraction(g, 4, 4));
    split_max = std::max({split_max, s.orthogonality, s.m_norm_defect, s.c_norm_defect});
  }
  r.at_most("geometric_split", split_max, 1e-9);
}

inline void hb_space_group(Recorder& r, rnd::Engine& g) {
  const int N = 64;
  const std::vector<SymbolSpec> symbols{fixtures::constant_06(), fixtures::identity_symbol(),
                                        fixtures::half_plus_half_z(), fixtures::blaschke2()};
  const std::vector<cplx> pts = fixtures::disk_points(g, 20, 0.8);
  double two_route = 0.0, repro = 0.0, psd = INFINITY, closed = 0.0, ortho = 0.0, incl = INFINITY;
  std::vector<HbSpace> spaces;
  for (const auto& s : symbols) {
    spaces.push_back(build(s, N));
    const HbSpace& sp = spaces.back();
    Mat K(20, 20), C(20, 20);
    for (int j = 0; j < 20; ++j) {
      const HardySeries k = kernel(sp, pts[j]);
      two_route = std::max(two_route, (k.c - kernel_closed_form(sp, pts[j]).c).norm());
      for (int i = 0; i < 20; ++i) {
        K(i, j) = eval(k, pts[i]);
        C(i, j) = (1.0 - std::conj(eval(sp.b, pts[j])) * eval(sp.b, pts[i])) / (1.0 - std::conj(pts[j]) * pts[i]);
      }
      if (j < 5)
        for (int c = 0; c < sp.rank; ++c) {
          const HardySeries h(Vec(sp.basis.col(c)));
          repro = std::max(repro, std::abs(hb_inner_unchecked(sp, h, k) - eval(h, pts[j])));
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(K), Eigen::EigenvaluesOnly);
    psd = std::min(psd, es.eigenvalues()(0));
    closed = std::max(closed, (K - C).cwiseAbs().maxCoeff());
    ortho = std::max(ortho, (sp.basis.adjoint() * sp.metric() * sp.basis - Mat::Identity(sp.rank, sp.rank)).cwiseAbs().maxCoeff());
    for (int k = 0; k < 10; ++k) {
      const HardySeries h = random_member(sp, g);
      incl = std::min(incl, hb_vector(sp, h).hb_norm_sq - h.c.squaredNorm());
    }
  }
  r.at_most("kernel_two_route", two_route, std::max(1e-8, 3.0 * std::pow(0.8, N + 1)));
  r.at_most("kernel_reproducing", repro, 1e-8);
  r.at_least("kernel_gram_min_eigenvalue", psd, -1e-10);
  r.at_most("kernel_gram_closed_form", closed, 1e-8);
  r.at_most("basis_orthonormality", ortho, 1e-9);
  r.at_least("contractive_inclusion", incl, -1e-9);

  const HbSpace su = build(fixtures::blaschke2(), 32);
  const HbSpace sh = build(fixtures::half_plus_half_z(), 32);
  r.equals("blaschke2_rank", su.rank, 2);
  r.equals("zero_symbol_rank", build(SymbolSpec{Constant{0.0}}, 16, ClassifyOptions{kDefaultGrid, 16, 1 << 12}).rank, 17);
  r.equals("identity_symbol_rank", build(fixtures::identity_symbol(), 16).rank, 1);
  double inner_deg = 0.0;
  for (int k = 0; k < 10; ++k) {
    const HardySeries h1 = random_member(su, g), h2 = random_member(su, g);
    inner_deg = std::max(inner_deg, std::abs(hb_inner(su, h1, h2) - h2_inner(h1, h2)));
  }
  r.at_most("inner_case_degeneration", inner_deg, 1e-9);

  double duality = 0.0, formula = 0.0, resolvent = 0.0, dq_member = 0.0;
  for (const HbSpace* sp : {&su, &sh}) {
    for (int k = 0; k < 10; ++k) {
      const HardySeries h = random_interior_member(*sp, g), q = random_interior_member(*sp, g);
      const HardySeries xs = xb_adjoint_apply(*sp, q);
      duality = std::max(duality, std::abs(hb_inner(*sp, xb_apply(*sp, h), q) - hb_inner(*sp, h, xs)));
      formula = std::max(formula, (xs.c - xb_adjoint_metric(*sp, q).c).norm());
    }
    for (int k = 0; k < 5; ++k) {
      const DifferenceQuotient dq = difference_quotient(*sp, rnd::disk_point(g, 0.9));
      resolvent = std::max(resolvent, dq.resolvent_defect);
      dq_member = std::max(dq_member, dq.residual);
    }
  }
  r.at_most("xb_adjoint_duality", duality, 1e-8);
  r.at_most("xb_adjoint_formula_vs_metric", formula, 1e-8);
  r.at_most("difference_quotient_resolvent", resolvent, 1e-8);
  r.at_most("difference_quotient_membership", dq_member, 1e-6);

  double xb_norm = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Polynomial p = rnd::polynomial_in_ball(g, rnd::uniform_int(g, 1, 6), rnd::uniform(g, 0.5, 0.99));
    const HbSpace sp = build(SymbolSpec{p}, 32, ClassifyOptions{kDefaultGrid, 32, 1 << 14});
    xb_norm = std::max(xb_norm, spectral_norm(xb_matrix(sp)));
  }
  r.at_most("xb_contraction_random_polynomials", xb_norm, 1.0 + 1e-9);

  double inv_ratio = 0.0, inv_res = 0.0;
  const std::vector<SymbolSpec> phis{fixtures::identity_symbol(), fixtures::half_plus_half_z(), fixtures::blaschke2()};
  for (const HbSpace* sp : {&su, &sh})
    for (const auto& phi : phis) {
      const InvarianceReport ir = coanalytic_invariance_check(*sp, phi);
      inv_ratio = std::max(inv_ratio, ir.operator_norm / ir.phi_sup);
      inv_res = std::max(inv_res, ir.max_residual);
    }
  r.at_most("coanalytic_norm_ratio", inv_ratio, 1.0 + 1e-8);
  r.at_most("coanalytic_membership", inv_res, 1e-6);

  const HbVector sb = sstar_b(spaces[2]);
  r.at_most("sstar_b_membership", sb.residual, 1e-8);
  double mb = 0.0;
  for (int k = 0; k < 5; ++k) mb = std::max(mb, m_b_norm(sh, rnd::series(g, 16)).shift_defect);
  r.at_most("mb_shift_isometry", mb, 1e-12);

  const KbReport kh = kb_representation(sh, 256);
  r.at_most("kb_isometry_half", kh.isometry_defect, 2e-6);
  r.at_most("kb_intertwining_half", kh.intertwining_defect, 1e-5);
  const KbReport ku = kb_representation(su, 256);
  r.at_most("kb_isometry_blaschke2", ku.isometry_defect, 2e-6);
  r.at_most("kb_intertwining_blaschke2", ku.intertwining_defect, 1e-5);

  // H(b-bar) sits contractively in H(b): Gbar <= G.
  Eigen::SelfAdjointEigenSolver<Mat> order(hermitian_part(sh.G - sh.Gbar), Eigen::EigenvaluesOnly);
  r.at_least("hbbar_contained_contractively", order.eigenvalues()(0), -1e-10);
}

inline void dichotomy_group(Recorder& r, rnd::Engine& g) {
  int blaschke_misses = 0, poly_misses = 0;
  for (int k = 0; k < 5; ++k) {
    const Blaschke b = rnd::blaschke(g, rnd::uniform_int(g, 1, 4), 0.9);
    if (classify(SymbolSpec{b}).verdict != Verdict::Extreme) ++blaschke_misses;
    const Polynomial p = rnd::polynomial_in_ball(g, rnd::uniform_int(g, 1, 6), rnd::uniform(g, 0.3, 1.0 - 1e-3));
    if (classify(SymbolSpec{p}, ClassifyOptions{kDefaultGrid, 16, 1 << 12}).verdict != Verdict::Nonextreme) ++poly_misses;
  }
  r.equals("blaschke_not_extreme", blaschke_misses, 0);
  r.equals("polynomial_not_nonextreme", poly_misses, 0);

  const int N = 64;
  const HbSpace sp = build(fixtures::half_plus_half_z(), N);
  r.equals("half_plus_half_z_nonextreme", sp.verdict == Verdict::Nonextreme, 1);
  const Classification c = classify(fixtures::half_plus_half_z(), ClassifyOptions{kDefaultGrid, N, kDefaultOuterGrid});
  r.at_most("szego_minus_log2", std::abs(c.szego_values[0] + std::log(2.0)), 1e-3);
  r.at_most("modulus_identity", c.modulus_residual, 1e-6);
  double a0 = 0.0;
  for (const SymbolSpec& s : {fixtures::half_plus_half_z(), fixtures::constant_06()}) {
    const double szego = szego_integral(delta_grid(boundary_samples(s, 1 << 16, true)));
    a0 = std::max(a0, std::abs(outer_companion(s, 16, 1 << 20).c(0) - std::exp(szego)));
  }
  r.at_most("outer_normalization", a0, 1e-4);

  const HardySeries& a = *sp.a;
  r.at_most("companion_coefficients",
            std::max({std::abs(a.c(0) - 0.5), std::abs(a.c(1) + 0.5), a.c.tail(N - 1).cwiseAbs().maxCoeff()}), 1e-6);
  const NormIdentity ni = norm_b_identity(sp);
  r.at_most("norm_b_pseudoinverse_route", std::abs(ni.lhs - 3.0), 1e-5);
  r.at_most("norm_b_companion_route", std::abs(ni.rhs - 3.0), 1e-5);
  const HPlusPair bp = h_plus(sp, sp.b);
  HardySeries want(N);
  want.c(0) = 1.5;
  want.c(1) = 0.5;
  r.at_most("b_plus", (bp.h_plus.c - want.c).cwiseAbs().maxCoeff(), 1e-6);

  double routes = 0.0, hres = 0.0, law = 0.0;
  for (int k = 0; k < 20; ++k) {
    const HardySeries h1 = random_member(sp, g), h2 = random_member(sp, g);
    const cplx g1 = hb_inner(sp, h1, h2);
    routes = std::max({routes, std::abs(g1 - hb_inner_dual(sp, h1, h2)), std::abs(g1 - nonextreme_inner_product(sp, h1, h2))});
    hres = std::max(hres, h_plus(sp, h1).residual / h1.norm());
    law = std::max(law, multiplicative_law_defect(sp, symbol_coeffs(fixtures::half_plus_half_z(), N), h1));
  }
  r.at_most("three_route_inner_product", routes, 1e-5);
  r.at_most("h_plus_residual", hres, 1e-6);
  r.at_most("h_plus_multiplicative_law", law, 1e-8);

  const HbSpace s6 = build(fixtures::constant_06(), N);
  r.at_most("b_membership_half", membership_residual(sp, sp.b), 1e-6);
  r.at_most("b_membership_constant", membership_residual(s6, s6.b), 1e-6);
  const ShiftReport shift = shift_invariance_check(sp);
  r.at_most("shift_invariance_nonextreme", shift.max_residual, 1e-6);
  const PolynomialMembership pm = polynomial_membership_check(sp, 8);
  r.at_most("polynomial_membership", std::max(pm.max_solve_residual, pm.max_hb_residual), 1e-6);

  for (const auto& [name, s] : std::vector<std::pair<std::string, SymbolSpec>>{
           {"identity", fixtures::identity_symbol()}, {"blaschke2", fixtures::blaschke2()}}) {
    const HbSpace si = build(s, N);
    r.at_least("b_nonmembership_" + name, membership_residual(si, si.b), 0.1);
    r.at_least("shift_witness_" + name, shift_invariance_check(si).witness_residual, 0.1);
  }
  const SymbolSpec grid = fixtures::contact_grid();
  r.equals("contact_grid_extreme", classify(grid).verdict == Verdict::Extreme, 1);
  const HbSpace sg = build(grid, N);
  r.report("b_membership_contact_grid", membership_residual(sg, sg.b));
  // G has full numerical rank here, so non-membership shows as growth of ||b||_{H(b)} with N.
  const double g16 = hb_inner_unchecked(build(grid, 16), symbol_coeffs(grid, 16), symbol_coeffs(grid, 16)).real();
  const double g64 = hb_inner_unchecked(sg, sg.b, sg.b).real();
  r.at_least("b_norm_growth_contact_grid", g64 / g16, 1.25);
  const HbSpace sh16 = build(fixtures::half_plus_half_z(), 16);
  r.at_most("b_norm_stability_half", std::abs(ni.lhs / norm_b_identity(sh16).lhs - 1.0), 1e-4);
}

inline void extreme_model_group(Recorder& r, rnd::Engine& g) {
  const Mat T3 = fixtures::triangular_from_spectrum({0.2, cplx(0.4, 0.1), -0.3});
  const std::vector<std::pair<std::string, Mat>> cases{
      {"zero", Mat::Zero(1, 1)}, {"nilpotent", fixtures::nilpotent2()}, {"triangular3", T3}};
  for (const auto& [name, T] : cases) {
    const int N = 32;
    const ModelReport m = model_roundtrip(T, N);
    double zeros = 0.0;
    for (double v : m.zero_match_residuals) zeros = std::max(zeros, v);
    r.at_most("model_inner_" + name, m.inner_defect, 1e-6);
    r.equals("model_rank_match_" + name, m.rank_match, 1);
    r.at_most("model_spectrum_" + name, m.spectrum_defect, 1e-6);
    r.at_most("model_zeros_" + name, zeros, 1e-6);
    r.at_most("window_exactness_" + name,
              (characteristic_b(T, N, N + 2).c - characteristic_b(T, N, N + 5).c).cwiseAbs().maxCoeff(), 1e-12);
  }
  double conj_inv = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Mat Q = rnd::unitary(g, 3);
    conj_inv = std::max(conj_inv, (characteristic_b(Q * T3 * Q.adjoint(), 32).c - characteristic_b(T3, 32).c).cwiseAbs().maxCoeff());
  }
  r.at_most("model_unitary_invariance", conj_inv, 1e-8);

  double closure = 0.0, ev_max = 0.0;
  int dim_misses = 0;
  for (int d = 1; d <= 5; ++d) {
    Blaschke b = rnd::blaschke(g, d, 0.6);
    b.factor = 1.0;
    const HbSpace sp = build(SymbolSpec{b}, 64);
    const DefectDims dd = xb_defect_dims(sp);
    if (dd.d1 != 1 || dd.d2 != 1) ++dim_misses;
    ev_max = std::max(ev_max, no_isometric_part_check(sp).max_modulus);
    const HardySeries rec = characteristic_b(xb_matrix(sp), 64);
    closure = std::max(closure, (rec.c - normalize_phase(sp.b).c).cwiseAbs().maxCoeff());
  }
  r.equals("xb_defect_dim_misses", dim_misses, 0);
  r.at_most("xb_eigenvalue_modulus", ev_max, 1.0 - kPurityMargin);
  r.at_most("roundtrip_closure", closure, 1e-6);

  Mat rot(2, 2);
  rot << 0.6, -0.8, 0.8, 0.6;
  r.equals("unitary_not_pure", purity_check(rot), 0);
  const DilationWindow w = build_dilation(fixtures::nilpotent2(), 4);
  r.at_most("dilation_unitarity", unitarity_defect(w.W), 1e-10);

  const OmegaReport om = omega_intertwining_check(fixtures::blaschke2(), 32, 256);
  r.at_most("omega_unitarity_blaschke2", om.unitarity_defect, 1e-10);
  r.at_most("omega_intertwining_blaschke2", om.intertwining_defect, 1e-4);
  const OmegaReport oz = omega_intertwining_check(fixtures::identity_symbol(), 32, 256);
  r.at_most("omega_unitarity_identity", oz.unitarity_defect, 1e-10);
  r.at_most("omega_intertwining_identity", oz.intertwining_defect, 1e-4);
  const OmegaReport og = omega_intertwining_check(fixtures::contact_grid(), 32, 256);
  r.at_most("omega_unitarity_contact_grid", og.unitarity_defect, 1e-10);
}

struct GroupSpec {
  std::string name;
  std::function<void(Recorder&, rnd::Engine&)> run;
};

inline std::vector<GroupSpec> groups() {
  return {{"hardy_core", hardy_group},       {"toeplitz_ops", toeplitz_group},
          {"contractive_geometry", contractive_group}, {"hb_space", hb_space_group},
          {"dichotomy", dichotomy_group},    {"extreme_model", extreme_model_group}};
}

inline GroupResult run_group(const GroupSpec& spec, std::uint64_t seed, std::uint64_t index) {
  GroupResult out;
  out.name = spec.name;
  Recorder rec;
  rnd::Engine g = rnd::engine(seed, index);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    spec.run(rec, g);
  } catch (const Error& e) {
    rec.equals(std::string("raised_") + to_string(e.kind()), 1, 0);
  } catch (const std::exception& e) {
    rec.equals("raised_exception", 1, 0);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.checks = std::move(rec.checks());
  return out;
}

// Groups run on up to `jobs` threads; results come back in canonical group order.
inline std::vector<GroupResult> run_all(std::uint64_t seed, int jobs = 1) {
  const auto specs = groups();
  std::vector<GroupResult> results(specs.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < specs.size(); ++i) results[i] = run_group(specs[i], seed, i);
    return results;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (size_t i = next++; i < specs.size(); i = next++) results[i] = run_group(specs[i], seed, i);
    });
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace dbr::verify

#endif  // DBR_VERIFY_HPP