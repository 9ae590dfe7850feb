#include <gtest/gtest.h>

#include "dbr/extreme_model.hpp"
#include "dbr/hb_space.hpp"
#include "dbr/random.hpp"

using namespace dbr;

namespace {

const SymbolSpec kBlaschke2 = Rational{{0.0, -0.5, 1.0}, {1.0, -0.5}};
const SymbolSpec kHalf = Polynomial{{0.5, 0.5}};
const SymbolSpec kZ = Polynomial{{0.0, 1.0}};

const HbSpace& half64() {
  static const HbSpace sp = build(kHalf, 64);
  return sp;
}

const HbSpace& constant06() {
  static const HbSpace sp = build(Constant{0.6}, 16);
  return sp;
}

HardySeries unit(int N, int k) {
  HardySeries h(N);
  h.c(k) = 1.0;
  return h;
}

Vec sorted_by_real(Vec v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  return v;
}

}  // namespace

TEST(Build, ZeroSymbolIsFullSpace) {
  const HbSpace sp = build(Constant{0.0}, 8);
  EXPECT_EQ(sp.rank, 9);
  EXPECT_LE((sp.G - Mat::Identity(9, 9)).norm(), 1e-14);
}

TEST(Build, IdentitySymbolGivesConstants) {
  const HbSpace sp = build(kZ, 16);
  EXPECT_EQ(sp.rank, 1);
  EXPECT_EQ(sp.verdict, Verdict::Extreme);
}

TEST(Build, BlaschkeRankEqualsDegree) {
  for (int N : {4, 16, 64}) EXPECT_EQ(build(kBlaschke2, N).rank, 2);
}

TEST(Build, RejectsSymbolOutsideBall) {
  EXPECT_THROW(build(Constant{1.5}, 8), Error);
  EXPECT_THROW(build(Constant{0.5}, 3), Error);
}

TEST(Kernel, Examples) {
  const HbSpace sz = build(kZ, 16);
  EXPECT_LE((kernel(sz, cplx(0.3, 0.2)).c - unit(16, 0).c).norm(), 1e-14);
  EXPECT_LE((kernel(constant06(), 0.0).c - 0.64 * unit(16, 0).c).norm(), 1e-14);
  EXPECT_NEAR(eval(kernel(half64(), 0.3), 0.3).real(), 0.5775 / 0.91, 1e-8);
  EXPECT_THROW(kernel(half64(), 0.95), Error);
}

TEST(Kernel, TwoRoutes) {
  const int N = 64;
  const double bound = std::max(1e-8, 3.0 * std::pow(0.8, N + 1));
  for (const SymbolSpec& s : {SymbolSpec{kBlaschke2}, SymbolSpec{kZ}}) {
    const HbSpace sp = build(s, N);
    for (int j = 0; j < 20; ++j) {
      const cplx l = std::polar(0.8 * (j + 1) / 20.0, 0.7 * j);
      const HardySeries k = kernel(sp, l);
      EXPECT_LE((k.c - kernel_closed_form(sp, l).c).norm(), bound * std::max(1.0, k.norm()));
    }
  }
  for (int j = 0; j < 20; ++j) {
    const cplx l = std::polar(0.8 * (j + 1) / 20.0, 0.7 * j);
    const HardySeries k = kernel(half64(), l);
    EXPECT_LE((k.c - kernel_closed_form(half64(), l).c).norm(), bound * std::max(1.0, k.norm()));
  }
}

TEST(Kernel, GramMatrixPsdAndClosedForm) {
  const HbSpace& sp = half64();
  std::vector<cplx> pts;
  for (int j = 0; j < 8; ++j) pts.push_back(std::polar(0.1 * (j % 8) + 0.05, 1.3 * j));
  const int n = static_cast<int>(pts.size());
  Mat K(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      K(i, j) = eval(kernel(sp, pts[j]), pts[i]);
      const cplx bi = eval(sp.b, pts[i]), bj = eval(sp.b, pts[j]);
      const cplx closed = (1.0 - std::conj(bj) * bi) / (1.0 - std::conj(pts[j]) * pts[i]);
      EXPECT_LE(std::abs(K(i, j) - closed), 1e-8);
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(K), Eigen::EigenvaluesOnly);
  EXPECT_GE(es.eigenvalues()(0), -1e-10);
}

TEST(HbInner, Examples) {
  const HardySeries one = unit(16, 0);
  EXPECT_NEAR(hb_inner(constant06(), one, one).real(), 1.5625, 1e-12);
  const HbSpace sz = build(kZ, 16);
  EXPECT_NEAR(hb_inner(sz, one, one).real(), 1.0, 1e-12);
  try {
    hb_inner(sz, unit(16, 1), one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInSpace);
  }
}

TEST(HbInner, DualRouteAndReproducing) {
  const HbSpace& sp = half64();
  auto g = rnd::engine(30);
  for (int trial = 0; trial < 10; ++trial) {
    const HardySeries h(Vec(sp.basis * rnd::gaussian_vector(g, sp.rank)));
    const HardySeries f(Vec(sp.basis * rnd::gaussian_vector(g, sp.rank)));
    const cplx v = hb_inner(sp, h, f);
    EXPECT_LE(std::abs(v - hb_inner_dual(sp, h, f)), 1e-8 * (1.0 + std::abs(v)));
  }
  for (int i = 0; i < sp.rank; i += 8) {
    const HardySeries h(Vec(sp.basis.col(i)));
    EXPECT_LE(std::abs(hb_inner(sp, h, kernel(sp, 0.3)) - eval(h, 0.3)), 1e-8);
  }
}

TEST(HbInner, ContractiveInclusion) {
  const HbSpace& sp = half64();
  for (int i = 0; i < sp.rank; ++i) {
    const HardySeries h(Vec(sp.basis.col(i)));
    EXPECT_GE(1.0, h.c.squaredNorm() - 1e-9);
  }
}

TEST(HbInner, InnerCaseIsIsometric) {
  const HbSpace sp = build(kBlaschke2, 32);
  for (int i = 0; i < sp.rank; ++i)
    for (int j = 0; j < sp.rank; ++j) {
      const HardySeries hi(Vec(sp.basis.col(i))), hj(Vec(sp.basis.col(j)));
      EXPECT_LE(std::abs(hb_inner(sp, hi, hj) - h2_inner(hi, hj)), 1e-9);
    }
}

TEST(MbNorm, Examples) {
  const HardySeries one = unit(8, 0);
  EXPECT_EQ(m_b_norm(constant06(), one).norm, 1.0);
  EXPECT_EQ(m_b_norm(constant06(), one).shift_defect, 0.0);
  EXPECT_GT(m_b_norm(constant06(), one).norm, 0.6);
}

TEST(Xb, Examples) {
  const HbSpace sz = build(kZ, 16);
  ASSERT_EQ(xb_matrix(sz).rows(), 1);
  EXPECT_LE(std::abs(xb_matrix(sz)(0, 0)), 1e-14);
  const Vec ev = sorted_by_real(eigenvalues(xb_matrix(build(kBlaschke2, 32))));
  EXPECT_LE(std::abs(ev(0)), 1e-8);
  EXPECT_LE(std::abs(ev(1) - 0.5), 1e-8);
  EXPECT_THROW(xb_apply(sz, unit(16, 1)), Error);
}

TEST(Xb, ContractionOnRandomPolynomials) {
  auto g = rnd::engine(31);
  for (int trial = 0; trial < 5; ++trial) {
    const Polynomial p = rnd::polynomial_in_ball(g, rnd::uniform_int(g, 1, 6), rnd::uniform(g, 0.3, 0.99));
    const HbSpace sp = build(p, 32, ClassifyOptions{1024, 32, 1 << 14});
    EXPECT_LE(spectral_norm(xb_matrix(sp)), 1.0 + 1e-9);
  }
}

TEST(CoanalyticInvariance, Examples) {
  const HbSpace sp = build(kBlaschke2, 32);
  const InvarianceReport one = coanalytic_invariance_check(sp, Constant{1.0});
  EXPECT_EQ(one.violations, 0);
  EXPECT_NEAR(one.operator_norm, 1.0, 1e-9);
  const InvarianceReport z = coanalytic_invariance_check(sp, kZ);
  EXPECT_EQ(z.violations, 0);
  EXPECT_NEAR(z.operator_norm, spectral_norm(xb_matrix(sp)), 1e-12);
  const InvarianceReport half = coanalytic_invariance_check(sp, kHalf);
  EXPECT_EQ(half.violations, 0);
  EXPECT_LE(half.operator_norm, (1.0 + 1e-8) * half.phi_sup);
}

TEST(SstarB, Examples) {
  EXPECT_LE(sstar_b(constant06()).ambient.norm(), 0.0);
  const HbVector z = sstar_b(build(kZ, 16));
  EXPECT_LE((z.ambient.c - unit(16, 0).c).norm(), 0.0);
  EXPECT_NEAR(z.hb_norm_sq, 1.0, 1e-12);
  const HbVector h = sstar_b(half64());
  EXPECT_LE((h.ambient.c - 0.5 * unit(64, 0).c).norm(), 1e-15);
  EXPECT_LE(h.residual, 1e-8);
}

TEST(XbAdjoint, Examples) {
  const HbSpace sz = build(kZ, 16);
  EXPECT_LE(xb_adjoint_apply(sz, unit(16, 0)).c.norm(), 1e-14);
  auto g = rnd::engine(32);
  const HardySeries h(Vec(constant06().basis * rnd::gaussian_vector(g, constant06().rank)));
  HardySeries hh = h;
  hh.c(16) = 0.0;
  EXPECT_LE((xb_adjoint_apply(constant06(), hh).c - forward_shift(hh).c).norm(), 1e-14);
}

TEST(XbAdjoint, FormulaMatchesMetricAdjoint) {
  const HbSpace sp = build(kBlaschke2, 32);
  auto g = rnd::engine(33);
  for (int trial = 0; trial < 5; ++trial) {
    const HardySeries h(Vec(sp.basis * rnd::gaussian_vector(g, sp.rank)));
    EXPECT_LE((xb_adjoint_apply(sp, h).c - xb_adjoint_metric(sp, h).c).norm(), 1e-8 * h.norm());
    const HardySeries f(Vec(sp.basis * rnd::gaussian_vector(g, sp.rank)));
    const cplx lhs = hb_inner(sp, backshift(h), f);
    const cplx rhs = hb_inner(sp, h, xb_adjoint_apply(sp, f));
    EXPECT_LE(std::abs(lhs - rhs), 1e-8);
  }
}

TEST(DifferenceQuotient, Examples) {
  const DifferenceQuotient d0 = difference_quotient(half64(), 0.0);
  EXPECT_LE((d0.q.c - backshift(half64().b).c).norm(), 0.0);
  const DifferenceQuotient dz = difference_quotient(build(kZ, 16), cplx(0.4, 0.3));
  EXPECT_LE((dz.q.c - unit(16, 0).c).norm(), 1e-15);
  const DifferenceQuotient dh = difference_quotient(half64(), 0.5);
  EXPECT_LE((dh.q.c - 0.5 * unit(64, 0).c).norm(), 1e-15);
  EXPECT_LE(dh.resolvent_defect, 1e-8);
  EXPECT_LE(dh.residual, 1e-6);
  EXPECT_THROW(difference_quotient(half64(), 0.95), Error);
}

TEST(DifferenceQuotient, ResolventIdentity) {
  const HbSpace sp = build(kBlaschke2, 32);
  for (cplx l : {cplx(0.0), cplx(0.3), cplx(-0.5, 0.2), cplx(0.1, -0.7), cplx(0.85)}) {
    const DifferenceQuotient d = difference_quotient(sp, l);
    EXPECT_LE(d.resolvent_defect, 1e-8);
    EXPECT_LE(d.residual, 1e-6);
  }
}

TEST(KbRepresentation, InnerSymbol) {
  const KbReport r = kb_representation(build(kBlaschke2, 16), 128);
  EXPECT_EQ(r.dim, 2);
  EXPECT_LE(r.isometry_defect, 2e-6);
}

TEST(KbRepresentation, ConstantAndHalf) {
  EXPECT_LE(kb_representation(constant06(), 128).isometry_defect, 2e-6);
  const KbReport r = kb_representation(build(kHalf, 32), 256);
  EXPECT_LE(r.isometry_defect, 2e-6);
  EXPECT_LE(r.intertwining_defect, 1e-5);
  EXPECT_THROW(kb_representation(constant06(), 64), Error);
}