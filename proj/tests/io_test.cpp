#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "dbr/io.hpp"

using namespace dbr;

TEST(Json, ComplexForms) {
  EXPECT_EQ(io::complex_from_json(io::json::parse("[0.5, -1]")), cplx(0.5, -1.0));
  EXPECT_EQ(io::complex_from_json(io::json::parse("0.6")), cplx(0.6));
  EXPECT_THROW(io::complex_from_json(io::json::parse("[1, 2, 3]")), Error);
  EXPECT_THROW(io::complex_from_json(io::json::parse("\"x\"")), Error);
}

TEST(Json, SymbolTypes) {
  const SymbolSpec c = io::symbol_from_json(io::json::parse(R"({"type":"constant","value":0.6})"));
  EXPECT_EQ(std::get<Constant>(c).value, cplx(0.6));
  const SymbolSpec p = io::symbol_from_json(io::json::parse(R"({"type":"poly","coeffs":[[0.5,0],[0.5,0]]})"));
  EXPECT_EQ(std::get<Polynomial>(p).coeffs.size(), 2u);
  const SymbolSpec r = io::symbol_from_json(io::json::parse(R"({"type":"rational","num":[0,-0.5,1],"den":[1,-0.5]})"));
  EXPECT_LE((symbol_coeffs(r, 4).c - (Vec(5) << 0, -0.5, 0.75, 0.375, 0.1875).finished()).norm(), 1e-15);
  const SymbolSpec b = io::symbol_from_json(io::json::parse(R"({"type":"blaschke","zeros":[[0,0]]})"));
  EXPECT_EQ(std::get<Blaschke>(b).factor, cplx(1.0));
  const SymbolSpec g = io::symbol_from_json(io::json::parse(R"({"type":"grid","samples":[0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1]})"));
  EXPECT_EQ(std::get<Grid>(g).grid.size(), 8);
}

TEST(Json, SymbolErrors) {
  EXPECT_THROW(io::symbol_from_json(io::json::parse(R"({"type":"spline"})")), Error);
  EXPECT_THROW(io::symbol_from_json(io::json::parse(R"({"coeffs":[1]})")), Error);
  EXPECT_THROW(io::symbol_from_json(io::json::parse(R"({"type":"constant"})")), Error);
  try {
    io::symbol_from_json(io::json::parse(R"({"type":"rational","num":[1],"den":[0.5,-1]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DenominatorZeroInDisk);
  }
  EXPECT_THROW(io::parse("{not json"), Error);
}

TEST(Json, SymbolRoundTrip) {
  const SymbolSpec r = Rational{{0.1, cplx(0.2, 0.1)}, {1.0, -0.5}};
  const SymbolSpec back = io::symbol_from_json(io::symbol_to_json(r));
  EXPECT_LE((symbol_coeffs(back, 16).c - symbol_coeffs(r, 16).c).norm(), 0.0);
}

TEST(Json, MatrixRoundTrip) {
  Mat T(2, 3);
  T << 0.0, 1.0, cplx(0.2, -0.1), 0.3, 0.0, -0.4;
  EXPECT_EQ(io::matrix_from_json(io::matrix_to_json(T)), T);
  const Mat n = io::matrix_from_json(io::json::parse(R"({"rows":2,"cols":2,"data":[[0,0],[1,0],[0,0],[0,0]]})"));
  EXPECT_EQ(n(0, 1), cplx(1.0));
  EXPECT_THROW(io::matrix_from_json(io::json::parse(R"({"rows":2,"cols":2,"data":[[0,0]]})")), Error);
}

TEST(Csv, RoundTripExact) {
  BoundaryGrid g{Vec(4), false};
  g.samples << cplx(0.1, 0.2), cplx(1.0 / 3.0, -0.0), cplx(-0.7, 1e-17), cplx(0.0, 0.5);
  const BoundaryGrid back = io::read_grid_csv_text(io::grid_csv_text(g));
  EXPECT_EQ(back.samples, g.samples);
}

TEST(Csv, Errors) {
  EXPECT_THROW(io::read_grid_csv_text("j,x,y\n0,1,0\n"), Error);
  EXPECT_THROW(io::read_grid_csv_text("j,re,im\n1,1,0\n"), Error);
  EXPECT_THROW(io::read_grid_csv_text("j,re,im\n0,abc,0\n"), Error);
  EXPECT_THROW(io::read_grid_csv_text(""), Error);
}

TEST(Csv, GridSymbolFromFile) {
  const auto dir = std::filesystem::temp_directory_path() / "dbr_io_test";
  std::filesystem::create_directories(dir);
  BoundaryGrid g{Vec::Constant(8, 0.25), false};
  io::write_grid_csv((dir / "g.csv").string(), g);
  const SymbolSpec s = io::symbol_from_json(io::json::parse(R"({"type":"grid","csv":"g.csv"})"), dir.string());
  EXPECT_EQ(std::get<Grid>(s).grid.samples, g.samples);
  std::filesystem::remove_all(dir);
}