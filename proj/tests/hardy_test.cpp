#include <gtest/gtest.h>

#include "dbr/hardy.hpp"
#include "dbr/random.hpp"

using namespace dbr;

TEST(Eval, ConstantIdentityAndAffine) {
  EXPECT_EQ(eval(HardySeries{1.0, 0.0, 0.0}, 0.5), cplx(1.0));
  EXPECT_NEAR(std::abs(eval(HardySeries{0.0, 1.0, 0.0}, cplx(0.3, 0.4)) - cplx(0.3, 0.4)), 0.0, 1e-15);
  EXPECT_NEAR(eval(HardySeries{0.5, 0.5}, 0.3).real(), 0.65, 1e-15);
}

TEST(Eval, RejectsBoundaryPoints) {
  const HardySeries h{1.0, 1.0};
  EXPECT_THROW(eval(h, 1.0), Error);
  EXPECT_THROW(eval(h, 1.0 - 1e-10), Error);
  EXPECT_NO_THROW(eval(h, 0.999));
  try {
    eval(h, cplx(0.0, 1.0));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointOutsideDisk);
  }
}

TEST(SzegoKernel, Coefficients) {
  const HardySeries k0 = szego_kernel(0.0, 4);
  EXPECT_EQ(k0.c, (Vec(5) << 1, 0, 0, 0, 0).finished());
  const HardySeries k = szego_kernel(0.5, 3);
  EXPECT_EQ(k.c, (Vec(4) << 1, 0.5, 0.25, 0.125).finished());
  const HardySeries kc = szego_kernel(cplx(0.0, 0.5), 2);
  EXPECT_NEAR(std::abs(kc.c(1) - cplx(0.0, -0.5)), 0.0, 1e-16);
}

TEST(SzegoKernel, NormAndCrossInner) {
  const int N = 20;
  const double norm = h2_inner(szego_kernel(0.5, N), szego_kernel(0.5, N)).real();
  EXPECT_NEAR(norm, 1.0 / 0.75, std::pow(0.5, 2 * N + 2) / 0.75 + 1e-15);
  EXPECT_NEAR(h2_inner(szego_kernel(0.3, 64), szego_kernel(0.4, 64)).real(), 1.0 / 0.88, 1e-14);
}

TEST(H2Inner, MonomialsAndMismatch) {
  EXPECT_EQ(h2_inner(HardySeries{1.0, 0.0}, HardySeries{1.0, 0.0}), cplx(1.0));
  EXPECT_EQ(h2_inner(HardySeries{0.0, 1.0}, HardySeries{1.0, 0.0}), cplx(0.0));
  EXPECT_EQ(h2_inner(HardySeries{cplx(0, 1)}, HardySeries{1.0}), cplx(0.0, 1.0));
  EXPECT_THROW(h2_inner(HardySeries(3), HardySeries(4)), Error);
}

TEST(Boundary, ConstantSamples) {
  const BoundaryGrid g = to_boundary(HardySeries{1.0, 0.0, 0.0}, 8);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(std::abs(g.samples(j) - 1.0), 0.0, 1e-15);
}

TEST(Boundary, RoundTripRandom) {
  auto g = rnd::engine(1);
  for (int trial = 0; trial < 20; ++trial) {
    const HardySeries h = rnd::series(g, 16);
    for (bool st : {false, true}) {
      const HardySeries back = from_boundary(to_boundary(h, 64, st), 16);
      EXPECT_LE((back.c - h.c).norm(), 1e-12 * h.norm());
    }
  }
}

TEST(Boundary, RoundTripAtMinimalGrid) {
  auto g = rnd::engine(2);
  for (int N : {7, 15, 31, 63, 127}) {
    const HardySeries h = rnd::series(g, N);
    EXPECT_LE((from_boundary(to_boundary(h, 2 * (N + 1)), N).c - h.c).norm(), 1e-12 * h.norm());
  }
}

TEST(Boundary, NegativeFrequencyProjectsToZero) {
  const BoundaryGrid g = sample_function(64, false, [](cplx z) { return std::conj(z); });
  EXPECT_LE(from_boundary(g, 8).c.norm(), 1e-15);
}

TEST(Boundary, GridTooSmall) {
  EXPECT_THROW(to_boundary(HardySeries(8), 16), Error);
  EXPECT_THROW(to_boundary(HardySeries(3), 12), Error);
  EXPECT_THROW(from_boundary(BoundaryGrid{Vec::Zero(16), false}, 8), Error);
}

TEST(Boundary, RealNonnegativeFunctionStaysReal) {
  const BoundaryGrid g = sample_function(256, false, [](cplx z) { return cplx(std::abs(1.0 - z) / 2.0); });
  const Vec c = fourier_coefficients(g);
  for (int k = 1; k < 128; ++k) EXPECT_NEAR(std::abs(c(k) - std::conj(c(256 - k))), 0.0, 1e-15);
}

TEST(Shifts, Examples) {
  EXPECT_EQ(backshift(HardySeries{1.0, 0.0, 0.0}).c, Vec::Zero(3));
  EXPECT_EQ(backshift(HardySeries{0.0, 1.0, 2.0}).c, (Vec(3) << 1, 2, 0).finished());
  EXPECT_EQ(forward_shift(HardySeries{1.0, 0.0, 0.0}).c, (Vec(3) << 0, 1, 0).finished());
}

TEST(Shifts, KernelEigenvector) {
  const cplx l(0.3, -0.2);
  const int N = 40;
  const HardySeries k = szego_kernel(l, N);
  const Vec diff = backshift(k).c - std::conj(l) * k.c;
  EXPECT_LE(diff.head(N).norm(), 1e-15);
  EXPECT_NEAR(std::abs(diff(N)), std::pow(std::abs(l), N + 1), 1e-15);
}

TEST(Shifts, Identities) {
  auto g = rnd::engine(3);
  for (int trial = 0; trial < 20; ++trial) {
    HardySeries h = rnd::series(g, 12);
    const HardySeries q = rnd::series(g, 12);
    HardySeries sh = forward_shift(backshift(h));
    HardySeries want = h;
    want.c(0) = 0.0;
    EXPECT_LE((sh.c - want.c).norm(), 1e-15);
    h.c(12) = 0.0;
    EXPECT_LE((backshift(forward_shift(h)).c - h.c).norm(), 1e-15);
    EXPECT_NEAR(std::abs(h2_inner(forward_shift(h), q) - h2_inner(h, backshift(q))), 0.0, 1e-12);
  }
}

TEST(Reproducing, H2KernelProperty) {
  auto g = rnd::engine(4);
  for (int trial = 0; trial < 50; ++trial) {
    const HardySeries h = rnd::series(g, 32);
    const cplx l = rnd::disk_point(g, 0.9);
    EXPECT_NEAR(std::abs(h2_inner(h, szego_kernel(l, 32)) - eval(h, l)), 0.0, 1e-10);
  }
}

TEST(Multiply, Truncates) {
  const HardySeries p = multiply(HardySeries{1.0, 1.0}, HardySeries{1.0, -1.0, 0.0}, 2);
  EXPECT_EQ(p.c, (Vec(3) << 1, 0, -1).finished());
}