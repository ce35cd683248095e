#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "bfclab/errors.hpp"
#include "bfclab/pattern.hpp"
#include "bfclab/prng.hpp"
#include "bfclab/specnorm.hpp"
#include "doctest.h"

using namespace bfclab;

namespace {

RealTable random_phi(int n, SplitMix64& rng) {
  RealTable phi(n);
  for (uint32_t x = 0; x < phi.size(); ++x)
    phi.values[x] = Rat(int64_t(rng.next() % 17) - 8, 4);
  return phi;
}

}  // namespace

TEST_CASE("choice sets enumerate in tuple order") {
  std::vector<std::vector<int>> vs = enumerate_V(4, 2);
  REQUIRE(vs.size() == 4);
  CHECK(vs[0] == std::vector<int>{1, 3});
  CHECK(vs[1] == std::vector<int>{1, 4});
  CHECK(vs[2] == std::vector<int>{2, 3});
  CHECK(vs[3] == std::vector<int>{2, 4});

  vs = enumerate_V(6, 2);
  REQUIRE(vs.size() == 9);
  CHECK(vs[0] == std::vector<int>{1, 4});
  CHECK(vs[8] == std::vector<int>{3, 6});

  CHECK(enumerate_V(3, 3).size() == 1);
  CHECK_THROWS_AS(enumerate_V(5, 2), input_error);
  CHECK_THROWS_AS(enumerate_V(0, 0), input_error);
}

TEST_CASE("first-character pattern with one split has the frozen norm") {
  PatternSpec spec;
  spec.N = 2;
  spec.n = 1;
  spec.phi = RealTable(1);
  spec.phi.values[0] = Rat(1);
  spec.phi.values[1] = Rat(-1);
  double closed = pattern_spectral_norm(spec);
  CHECK(closed == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

  MatrixLabels labels;
  RatMat m = pattern_matrix(spec, &labels);
  REQUIRE(m.rows == 4);
  REQUIRE(m.cols == 4);
  double brute = spectral_norm_oracle(m);
  CHECK(std::abs(closed - brute) / closed < 1e-8);
  CHECK(labels.rows[0] == "x=00");
  CHECK(labels.rows[3] == "x=11");
  CHECK(labels.cols[0] == "V=1;w=0");
  CHECK(labels.cols[3] == "V=2;w=1");
}

TEST_CASE("pattern matrix entries follow the block-selection rule") {
  PatternSpec spec;
  spec.N = 4;
  spec.n = 2;
  SplitMix64 rng(3);
  spec.phi = random_phi(2, rng);
  RatMat m = pattern_matrix(spec);
  std::vector<std::vector<int>> vs = enumerate_V(4, 2);
  REQUIRE(m.rows == 16);
  REQUIRE(m.cols == 16);
  for (uint32_t x = 0; x < 16; ++x)
    for (size_t vi = 0; vi < vs.size(); ++vi)
      for (uint32_t w = 0; w < 4; ++w) {
        uint32_t u = w;
        for (int j = 0; j < 2; ++j) u ^= ((x >> (vs[vi][j] - 1)) & 1) << j;
        CHECK(m.at(int(x), int(vi * 4 + w)) == spec.phi.values[u]);
      }
}

TEST_CASE("closed-form norm matches the materialized norm on random gadgets") {
  SplitMix64 rng(4);
  std::vector<std::pair<int, int>> shapes = {{2, 1}, {4, 2}, {3, 1}, {6, 3}, {4, 1}, {6, 2}};
  for (const auto& [bigN, n] : shapes) {
    for (int rep = 0; rep < 6; ++rep) {
      PatternSpec spec;
      spec.N = bigN;
      spec.n = n;
      spec.phi = random_phi(n, rng);
      double closed = pattern_spectral_norm(spec);
      double brute = spectral_norm_oracle(pattern_matrix(spec));
      if (closed == 0.0)
        CHECK(brute < 1e-9);
      else
        CHECK(std::abs(closed - brute) / closed < 1e-8);
    }
  }
}

TEST_CASE("both eigensolvers agree on random rectangular matrices") {
  SplitMix64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    int r = 2 + int(rng.next() % 6);
    int c = 2 + int(rng.next() % 6);
    RealMat m{r, c};
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = double(int64_t(rng.next() % 21)) - 10.0;
    double a = spectral_norm_jacobi(m);
    double b = spectral_norm_power(m);
    CHECK(a == doctest::Approx(b).epsilon(1e-7));
  }
}

TEST_CASE("spectral norm of a known matrix is exact") {
  RealMat m{2, 2};
  m.at(0, 0) = 3;
  m.at(0, 1) = 0;
  m.at(1, 0) = 0;
  m.at(1, 1) = -2;
  CHECK(spectral_norm_jacobi(m) == doctest::Approx(3.0).epsilon(1e-12));
  RealMat ones{4, 4};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ones.at(i, j) = 1;
  CHECK(spectral_norm_jacobi(ones) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(spectral_norm_power(ones) == doctest::Approx(4.0).epsilon(1e-10));
}
