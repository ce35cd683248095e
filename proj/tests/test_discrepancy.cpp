#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <bit>
#include <cmath>

#include "bfclab/discrepancy.hpp"
#include "bfclab/errors.hpp"
#include "bfclab/prng.hpp"
#include "doctest.h"

using namespace bfclab;

TEST_CASE("perfect correlation with the flat dual still lands in the vacuous regime") {
  RatMat f{4, 4};
  RatMat psi{4, 4};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      f.at(i, j) = 1;
      psi.at(i, j) = Rat(1, 16);
    }
  Discrepancy d = discrepancy_bound(psi, f, Rat(0));
  CHECK(d.correlation == Rat(1));
  CHECK(d.psi_norm == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(d.vacuous);
  CHECK(d.bound == 0.0);
}

TEST_CASE("a correlated low-norm dual yields a positive logarithmic bound") {
  // 16x16 sign matrix with orthogonal rows: spectral norm 4, so the scaled
  // copy has norm 1/64 and the ratio comes out to 4/3
  RatMat f{16, 16};
  RatMat psi{16, 16};
  RealMat psif{16, 16};
  for (uint32_t i = 0; i < 16; ++i)
    for (uint32_t j = 0; j < 16; ++j) {
      int sign = (std::popcount(i & j) & 1) ? -1 : 1;
      f.at(int(i), int(j)) = sign;
      psi.at(int(i), int(j)) = Rat(sign, 256);
      psif.at(int(i), int(j)) = sign / 256.0;
    }
  Discrepancy d = discrepancy_bound(psi, f, Rat(0));
  CHECK(d.correlation == Rat(1));
  CHECK(d.psi_norm == doctest::Approx(1.0 / 64.0).epsilon(1e-9));
  CHECK_FALSE(d.vacuous);
  CHECK(d.bound == doctest::Approx(std::log(4.0 / 3.0) / std::log(4.0)).epsilon(1e-8));

  Discrepancy df = discrepancy_bound(psif, f, 0.0);
  CHECK(df.bound == doctest::Approx(d.bound).epsilon(1e-8));

  // at exactly ratio one the report is vacuous
  RatMat f1{1, 1};
  RatMat psi1{1, 1};
  f1.at(0, 0) = 1;
  psi1.at(0, 0) = 1;
  Discrepancy edge = discrepancy_bound(psi1, f1, Rat(0));
  CHECK(edge.correlation == Rat(1));
  CHECK(edge.vacuous);
  CHECK(edge.bound == 0.0);
}

TEST_CASE("input validation guards shapes, signs, and mass") {
  RatMat f{2, 2};
  RatMat psi{2, 2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      f.at(i, j) = (i + j) % 2 ? -1 : 1;
      psi.at(i, j) = Rat(1, 4);
    }
  CHECK_NOTHROW(discrepancy_bound(psi, f));

  RatMat wrong{2, 3};
  CHECK_THROWS_AS(discrepancy_bound(wrong, f), input_error);

  RatMat badf = f;
  badf.at(0, 0) = 2;
  CHECK_THROWS_AS(discrepancy_bound(psi, badf), input_error);

  RatMat badpsi = psi;
  badpsi.at(0, 0) = Rat(1, 2);
  CHECK_THROWS_AS(discrepancy_bound(badpsi, f), input_error);

  CHECK_THROWS_AS(discrepancy_bound(psi, f, Rat(1, 2)), input_error);
  CHECK_THROWS_AS(discrepancy_bound(psi, f, Rat(-1, 10)), input_error);
}

TEST_CASE("higher noise can only weaken the bound") {
  RatMat f{1, 2};
  RatMat psi{1, 2};
  f.at(0, 0) = 1;
  f.at(0, 1) = -1;
  psi.at(0, 0) = Rat(3, 4);
  psi.at(0, 1) = Rat(-1, 4);
  Discrepancy tight = discrepancy_bound(psi, f, Rat(0));
  Discrepancy loose = discrepancy_bound(psi, f, Rat(1, 10));
  CHECK(tight.correlation == Rat(1));
  CHECK(loose.correlation == Rat(1));
  CHECK(tight.bound >= loose.bound);
}

TEST_CASE("the four-coordinate disjunction instance verifies end to end") {
  HardInstance inst = build_hard_instance(builtin("OR", 4), 4, 0);
  CHECK(inst.k == 4);
  CHECK(inst.d_star == 1);
  CHECK(inst.psi_mat.rows == 4);
  CHECK(inst.psi_mat.cols == 4);
  CHECK(inst.m_mat.rows == 4);
  CHECK(inst.m_mat.cols == 4);
  CHECK(inst.correlation == Rat(1));

  Rat l1 = 0;
  for (int i = 0; i < inst.psi_mat.rows; ++i)
    for (int j = 0; j < inst.psi_mat.cols; ++j) l1 += abs(inst.psi_mat.at(i, j));
  CHECK(l1 == Rat(1));

  Discrepancy d = discrepancy_bound(inst.psi_mat, inst.m_mat);
  CHECK(d.correlation == inst.correlation);
  CHECK(d.bound >= 0.0);
}

TEST_CASE("instance construction validates its inputs") {
  TruthTable or4 = builtin("OR", 4);
  CHECK_THROWS_AS(build_hard_instance(or4, 3, 0), input_error);
  CHECK_THROWS_AS(build_hard_instance(or4, 8, 0), input_error);
  CHECK_THROWS_AS(build_hard_instance(or4, 4, 1), input_error);
  TruthTable c(4);
  CHECK_THROWS_AS(build_hard_instance(c, 4, 0), input_error);
}

TEST_CASE("wider disjunction instances keep the correlation above a third") {
  HardInstance inst = build_hard_instance(builtin("OR", 8), 8, 0);
  CHECK(inst.k == 8);
  CHECK(inst.d_star == 2);
  CHECK(inst.correlation == Rat(1, 2));
  CHECK(inst.correlation > Rat(1, 3));
  Rat l1 = 0;
  for (int i = 0; i < inst.psi_mat.rows; ++i)
    for (int j = 0; j < inst.psi_mat.cols; ++j) l1 += abs(inst.psi_mat.at(i, j));
  CHECK(l1 == Rat(1));
}

TEST_CASE("instances built from shifted carriers keep their guarantees") {
  TruthTable g = shift(builtin("OR", 6), uint32_t(0b110000));
  HardInstance inst = build_hard_instance(g, 4, 0b110000);
  CHECK(inst.correlation > Rat(1, 3));
  Discrepancy d = discrepancy_bound(inst.psi_mat, inst.m_mat);
  CHECK(d.bound >= 0.0);
}

TEST_CASE("containment can only shrink the reported bound") {
  HardInstance inst = build_hard_instance(builtin("OR", 4), 4, 0);
  int r = inst.m_mat.rows, c = inst.m_mat.cols;
  RatMat bigf{2 * r, 2 * c};
  RatMat bigpsi{2 * r, 2 * c};
  for (int i = 0; i < 2 * r; ++i)
    for (int j = 0; j < 2 * c; ++j) {
      bigf.at(i, j) = (i < r && j < c) ? inst.m_mat.at(i, j) : Rat(1);
      bigpsi.at(i, j) = (i < r && j < c) ? inst.psi_mat.at(i, j) : Rat(0);
    }
  Discrepancy inner = discrepancy_bound(inst.psi_mat, inst.m_mat);
  Discrepancy outer = discrepancy_bound(bigpsi, bigf);
  CHECK(outer.correlation == inner.correlation);
  CHECK(outer.bound <= inner.bound + 1e-12);
}
