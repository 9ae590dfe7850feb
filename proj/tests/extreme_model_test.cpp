#include <gtest/gtest.h>

#include "dbr/extreme_model.hpp"
#include "dbr/random.hpp"
#include "dbr/verify.hpp"

using namespace dbr;

namespace {

Mat scalar(cplx c) { return Mat::Constant(1, 1, c); }

HardySeries monomial(int N, int k) {
  HardySeries h(N);
  h.c(k) = 1.0;
  return h;
}

}  // namespace

TEST(Purity, Examples) {
  EXPECT_TRUE(purity_check(verify::fixtures::nilpotent2()));
  Mat R(2, 2);
  R << 0.6, -0.8, 0.8, 0.6;
  EXPECT_FALSE(purity_check(R));
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 0.5;
  D(1, 1) = 0.99;
  D(0, 1) = 0.05;
  EXPECT_TRUE(purity_check(D));
  EXPECT_THROW(purity_check(scalar(1.5)), Error);
}

TEST(Dilation, Examples) {
  const DilationWindow w0 = build_dilation(scalar(0.0), 4);
  EXPECT_EQ(w0.W.rows(), 9);
  EXPECT_LE(unitarity_defect(w0.W), 1e-15);
  const DilationWindow w6 = build_dilation(scalar(0.6), 3);
  EXPECT_LE(unitarity_defect(w6.W), 1e-15);
  const DilationWindow wn = build_dilation(verify::fixtures::nilpotent2(), 4);
  EXPECT_EQ(wn.W.rows(), 10);
  EXPECT_LE(unitarity_defect(wn.W), 1e-14);
}

TEST(Dilation, RequiresRankOneDefects) {
  try {
    build_dilation(Mat::Zero(2, 2), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DefectRankNotOne);
  }
}

TEST(CharacteristicB, Examples) {
  EXPECT_LE((characteristic_b(scalar(0.0), 8).c - monomial(8, 1).c).norm(), 1e-14);
  EXPECT_LE((characteristic_b(verify::fixtures::nilpotent2(), 8).c - monomial(8, 2).c).norm(), 1e-14);
  Mat R(2, 2);
  R << 0.6, -0.8, 0.8, 0.6;
  EXPECT_THROW(characteristic_b(R, 8), Error);
}

TEST(CharacteristicB, RecoversBlaschkeZeros) {
  const HbSpace sp = build(verify::fixtures::blaschke2(), 32);
  const HardySeries b = characteristic_b(xb_matrix(sp), 64);
  EXPECT_LE(std::abs(eval(b, 0.0)), 1e-6);
  EXPECT_LE(std::abs(eval(b, 0.5)), 1e-6);
  const HardySeries want = normalize_phase(sp.b);
  EXPECT_LE((b.c.head(33) - want.c).norm(), 1e-6);
}

TEST(CharacteristicB, WindowExactness) {
  auto g = rnd::engine(50);
  const Mat T = verify::fixtures::triangular_from_spectrum({0.2, cplx(0.4, 0.1), -0.3});
  const int N = 24;
  EXPECT_LE((characteristic_b(T, N, N + 2).c - characteristic_b(T, N, N + 5).c).norm(), 1e-12);
  const Mat U = rnd::unitary(g, 3);
  EXPECT_LE((characteristic_b(U * T * U.adjoint(), N).c - characteristic_b(T, N).c).norm(), 1e-8);
}

TEST(ModelRoundtrip, Nilpotent) {
  const ModelReport r = model_roundtrip(verify::fixtures::nilpotent2(), 32);
  EXPECT_EQ(r.rank, 2);
  EXPECT_TRUE(r.rank_match);
  EXPECT_LE(r.spectrum_defect, 1e-6);
  EXPECT_LE(r.inner_defect, 1e-6);
  for (double z : r.zero_match_residuals) EXPECT_LE(z, 1e-6);
}

TEST(ModelRoundtrip, Scalar) {
  const ModelReport r = model_roundtrip(scalar(0.0), 32);
  EXPECT_EQ(r.rank, 1);
  EXPECT_LE(r.spectrum_defect, 1e-6);
}

TEST(ModelRoundtrip, ConstructedTriangular) {
  const Mat T = verify::fixtures::triangular_from_spectrum({0.2, cplx(0.4, 0.1), -0.3});
  EXPECT_LE(T.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm(), 1e-12);
  const ModelReport r = model_roundtrip(T, 64);
  EXPECT_TRUE(r.rank_match);
  EXPECT_LE(r.spectrum_defect, 1e-6);
  EXPECT_LE(r.inner_defect, 1e-6);
  for (double z : r.zero_match_residuals) EXPECT_LE(z, 1e-6);
}

TEST(DefectDims, Examples) {
  const DefectDims z = xb_defect_dims(build(Polynomial{{0.0, 1.0}}, 16));
  EXPECT_EQ(z.d1, 1);
  EXPECT_EQ(z.d2, 1);
  const DefectDims z2 = xb_defect_dims(build(Polynomial{{0.0, 0.0, 1.0}}, 16));
  EXPECT_EQ(z2.d1, 1);
  EXPECT_EQ(z2.d2, 1);
  auto g = rnd::engine(51);
  const DefectDims b5 = xb_defect_dims(build(rnd::blaschke(g, 5, 0.8), 64));
  EXPECT_EQ(b5.d1, 1);
  EXPECT_EQ(b5.d2, 1);
}

TEST(NoIsometricPart, Examples) {
  const IsometricPartReport z2 = no_isometric_part_check(build(Polynomial{{0.0, 0.0, 1.0}}, 16));
  EXPECT_TRUE(z2.pass);
  EXPECT_LE(z2.max_modulus, 1e-7);
  const HbSpace sp = build(Blaschke{{0.5, cplx(-0.3, 0.2)}, 1.0}, 32);
  Vec ev = eigenvalues(xb_matrix(sp));
  EXPECT_LE(matched_spectrum_defect(ev, (Vec(2) << 0.5, cplx(-0.3, -0.2)).finished()), 1e-8);
  auto g = rnd::engine(52);
  EXPECT_TRUE(no_isometric_part_check(build(rnd::blaschke(g, 8, 0.9), 64)).pass);
}

TEST(Omega, IdentitySymbol) {
  const OmegaReport r = omega_intertwining_check(Polynomial{{0.0, 1.0}}, 16, 128);
  EXPECT_LE(r.unitarity_defect, 1e-10);
}

TEST(Omega, RealBlaschke) {
  const OmegaReport r = omega_intertwining_check(verify::fixtures::blaschke2(), 32, 256);
  EXPECT_LE(r.unitarity_defect, 1e-10);
  EXPECT_LE(r.intertwining_defect, 1e-4);
  EXPECT_GT(r.frame_size, 0);
}

TEST(Omega, ContactGrid) {
  const OmegaReport r = omega_intertwining_check(verify::fixtures::contact_grid(), 32, 256);
  EXPECT_LE(r.unitarity_defect, 1e-10);
}

TEST(Omega, Errors) {
  EXPECT_THROW(omega_intertwining_check(Constant{0.6}, 16, 128), Error);
  EXPECT_THROW(omega_intertwining_check(Polynomial{{0.0, 1.0}}, 32, 64), Error);
}