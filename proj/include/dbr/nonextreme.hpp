#ifndef DBR_NONEXTREME_HPP
#define DBR_NONEXTREME_HPP

// Identities of the nonextreme case: the map h -> h+ with T_abar h+ = T_bbar h.

#include "dbr/hb_space.hpp"

namespace dbr {

struct HPlusPair {
  HardySeries h;
  HardySeries h_plus;
  double residual = 0.0;       // ||T_abar h+ - T_bbar h||
  double padding_delta = 0.0;  // solve at 2N truncated to N against the solve at N
};

namespace detail {

// Back substitution for T_abar x = rhs on P_L, L = rhs.degree().
inline HardySeries coanalytic_solve(const HardySeries& a, const HardySeries& rhs) {
  const int L = rhs.degree();
  const cplx d = std::conj(a.c(0));
  if (std::abs(d) == 0.0) throw Error(ErrorKind::ZeroDiagonal, "a(0) = 0");
  HardySeries x(L);
  for (int i = L; i >= 0; --i) {
    cplx acc = rhs.c(i);
    for (int j = i + 1; j <= std::min(L, i + a.degree()); ++j) acc -= std::conj(a.c(j - i)) * x.c(j);
    x.c(i) = acc / d;
  }
  return x;
}

inline HardySeries coanalytic_apply(const HardySeries& f, const HardySeries& h) {
  return HardySeries(Vec(toeplitz_coanalytic(resized(f, h.degree())) * h.c));
}

}  // namespace detail

inline HPlusPair h_plus(const HardySeries& b, const HardySeries& a, const HardySeries& h) {
  const int N = h.degree();
  if (std::abs(a.c(0)) == 0.0) throw Error(ErrorKind::ZeroDiagonal, "a(0) = 0");
  HPlusPair p;
  p.h = h;
  const HardySeries rhsN = detail::coanalytic_apply(b, h);
  const HardySeries xN = detail::coanalytic_solve(a, rhsN);
  const HardySeries h2 = resized(h, 2 * N);
  const HardySeries x2 = detail::coanalytic_solve(a, detail::coanalytic_apply(b, h2));
  p.h_plus = resized(x2, N);
  p.padding_delta = (p.h_plus.c - xN.c).norm();
  p.residual = (detail::coanalytic_apply(a, p.h_plus).c - rhsN.c).norm();
  return p;
}

inline const HardySeries& require_companion(const HbSpace& sp) {
  if (!sp.a) throw Error(ErrorKind::NotNonextreme, "space has no outer companion");
  return *sp.a;
}

inline HPlusPair h_plus(const HbSpace& sp, const HardySeries& h) {
  require_degree(sp, h);
  return h_plus(sp.b, require_companion(sp), h);
}

inline cplx nonextreme_inner_product(const HbSpace& sp, const HardySeries& h1, const HardySeries& h2) {
  const HPlusPair p1 = h_plus(sp, h1);
  const HPlusPair p2 = h_plus(sp, h2);
  return h2.c.dot(h1.c) + p2.h_plus.c.dot(p1.h_plus.c);
}

struct NormIdentity {
  double lhs = 0.0;       // ||b||^2 through the pseudoinverse of G
  double rhs = 0.0;       // |a(0)|^{-2} - 1
  double residual = 0.0;  // membership residual of b
};

inline NormIdentity norm_b_identity(const HbSpace& sp) {
  const HardySeries& a = require_companion(sp);
  NormIdentity r;
  r.residual = membership_residual(sp, sp.b);
  r.lhs = hb_inner_unchecked(sp, sp.b, sp.b).real();
  r.rhs = 1.0 / std::norm(a.c(0)) - 1.0;
  return r;
}

// ||(T_phibar h)+ - T_phibar h+||
inline double multiplicative_law_defect(const HbSpace& sp, const HardySeries& phi, const HardySeries& h) {
  const HardySeries th = detail::coanalytic_apply(phi, h);
  const HardySeries lhs = h_plus(sp, th).h_plus;
  const HardySeries rhs = detail::coanalytic_apply(phi, h_plus(sp, h).h_plus);
  return (lhs.c - rhs.c).norm();
}

struct ShiftReport {
  bool nonextreme_branch = false;
  double max_residual = 0.0;  // nonextreme: over shifted basis members
  double witness_residual = 0.0;  // extreme: residual of S S*b
};

inline ShiftReport shift_invariance_check(const HbSpace& sp) {
  ShiftReport r;
  r.nonextreme_branch = sp.verdict == Verdict::Nonextreme;
  if (r.nonextreme_branch) {
    for (int i = 0; i < sp.rank; ++i) {
      HardySeries h(Vec(sp.basis.col(i)));
      h.c(sp.N) = 0.0;
      r.max_residual = std::max(r.max_residual, membership_residual(sp, forward_shift(h)));
    }
  } else {
    r.witness_residual = membership_residual(sp, forward_shift(backshift(sp.b)));
  }
  return r;
}

struct PolynomialMembership {
  double max_solve_residual = 0.0;  // T_abar q = z^k
  double max_hb_residual = 0.0;     // membership of z^k in the truncated H(b)
};

inline PolynomialMembership polynomial_membership_check(const HbSpace& sp, int n) {
  const HardySeries& a = require_companion(sp);
  PolynomialMembership r;
  for (int k = 0; k <= std::min(n, sp.N); ++k) {
    HardySeries zk(sp.N);
    zk.c(k) = 1.0;
    const HardySeries q = detail::coanalytic_solve(a, zk);
    r.max_solve_residual = std::max(r.max_solve_residual, (detail::coanalytic_apply(a, q).c - zk.c).norm());
    r.max_hb_residual = std::max(r.max_hb_residual, membership_residual(sp, zk));
  }
  return r;
}

}  // namespace dbr

#endif  // DBR_NONEXTREME_HPP
