#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <bit>

#include "bfclab/measures.hpp"
#include "bfclab/prng.hpp"
#include "bfclab/transforms.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace bfclab;

namespace {

TruthTable random_table(int n, SplitMix64& rng) {
  TruthTable f(n);
  for (uint32_t x = 0; x < f.size(); ++x) f.set_bit(x, rng.next() & 1);
  return f;
}

// plain recursion over all disjoint sensitive block families, no memo and no
// canonical ordering, as a reference for the production search
int oracle_best(const TruthTable& f, uint32_t z, uint32_t avail, int ell, bool zero_only) {
  int best = 0;
  for (uint32_t s = avail; s; s = (s - 1) & avail) {
    if (std::popcount(s) > ell) continue;
    if (zero_only && (z & s) != 0) continue;
    if (f.value(z ^ s) == f.value(z)) continue;
    int rest = 1 + oracle_best(f, z, avail & ~s, ell, zero_only);
    if (rest > best) best = rest;
  }
  return best;
}

int oracle_bs(const TruthTable& f, int ell, bool zero_only) {
  int best = 0;
  for (uint32_t z = 0; z < f.size(); ++z) {
    int here = oracle_best(f, z, f.size() - 1, ell, zero_only);
    if (here > best) best = here;
  }
  return best;
}

}  // namespace

TEST_CASE("named functions have the expected complexity measures") {
  TruthTable and2 = builtin("AND", 2);
  CHECK(sensitivity(and2) == 2);
  CHECK(block_sens(and2) == 2);
  CHECK(zero_block_sens(and2) == 1);
  CHECK(decision_tree_depth(and2).d == 2);

  BlockSensitivity zb = block_sensitivity(and2, 2, true);
  CHECK(zb.k == 1);
  CHECK(zb.cert.z == 0);
  REQUIRE(zb.cert.blocks.size() == 1);
  CHECK(zb.cert.blocks[0] == 3);

  CHECK(sensitivity(builtin("XOR", 3)) == 3);
  CHECK(block_sens(builtin("XOR", 3)) == 3);
  CHECK(decision_tree_depth(builtin("XOR", 3)).d == 3);
  CHECK(sensitivity(builtin("MAJ", 3)) == 2);
  CHECK(block_sens(builtin("MAJ", 3)) == 2);
  CHECK(decision_tree_depth(builtin("MAJ", 3)).d == 3);
  CHECK(sensitivity(builtin("OR", 4)) == 4);
  CHECK(decision_tree_depth(builtin("OR", 4)).d == 4);

  TruthTable c(3);
  CHECK(sensitivity(c) == 0);
  CHECK(block_sens(c) == 0);
  CHECK(decision_tree_depth(c).d == 0);
}

TEST_CASE("block sensitivity matches a direct recursive search") {
  for (uint64_t w = 0; w < 256; ++w) {
    TruthTable f = table_from_word(3, w);
    for (int ell = 1; ell <= 3; ++ell) {
      CHECK(block_sensitivity(f, ell, false).k == oracle_bs(f, ell, false));
      CHECK(block_sensitivity(f, ell, true).k == oracle_bs(f, ell, true));
    }
  }
  SplitMix64 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    TruthTable f = random_table(4, rng);
    for (int ell : {1, 2, 4}) {
      CHECK(block_sensitivity(f, ell, false).k == oracle_bs(f, ell, false));
      CHECK(block_sensitivity(f, ell, true).k == oracle_bs(f, ell, true));
    }
  }
}

TEST_CASE("returned certificates are valid and use the smallest witness") {
  SplitMix64 rng(6);
  for (int rep = 0; rep < 40; ++rep) {
    TruthTable f = random_table(4, rng);
    for (int ell : {1, 2, 4}) {
      for (bool zero_only : {false, true}) {
        BlockSensitivity bs = block_sensitivity(f, ell, zero_only);
        CHECK(bs.cert.k == bs.k);
        if (bs.k > 0) {
          CHECK(certificate_valid(bs.cert, f));
          for (uint32_t z = 0; z < bs.cert.z; ++z)
            CHECK(oracle_best(f, z, f.size() - 1, ell, zero_only) < bs.k);
        }
      }
    }
  }
}

TEST_CASE("certificate validation rejects broken certificates") {
  TruthTable f = builtin("OR", 3);
  BlockSensitivity bs = block_sensitivity(f, 1, false);
  CHECK(bs.k == 3);
  CHECK(certificate_valid(bs.cert, f));

  SensitivityCertificate bad = bs.cert;
  bad.blocks[0] = bad.blocks[0] | bad.blocks[1];
  CHECK_FALSE(certificate_valid(bad, f));

  bad = bs.cert;
  bad.z ^= 7;
  CHECK_FALSE(certificate_valid(bad, f));

  bad = bs.cert;
  bad.k += 1;
  CHECK_FALSE(certificate_valid(bad, f));

  bad = bs.cert;
  bad.ell = 0;
  CHECK_FALSE(certificate_valid(bad, f));
}

TEST_CASE("certificate serialization exposes the block structure") {
  BlockSensitivity bs = block_sensitivity(builtin("AND", 2), 2, true);
  auto j = nlohmann::json::parse(certificate_json(bs.cert));
  CHECK(j["z"] == 0);
  CHECK(j["k"] == 1);
  CHECK(j["ell"] == 2);
  CHECK(j["zero_only"] == true);
  REQUIRE(j["blocks"].size() == 1);
  CHECK(j["blocks"][0] == nlohmann::json::parse("[1,2]"));
}

TEST_CASE("decision trees agree with their function at every input") {
  SplitMix64 rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    TruthTable f = random_table(4, rng);
    DepthResult res = decision_tree_depth(f);
    CHECK(res.tree.agrees_with(f));
    for (uint32_t x = 0; x < f.size(); ++x) CHECK(res.tree.eval(x) == f.value(x));
    CHECK(res.tree.depth == res.d);
    CHECK(res.d >= degree(f));
    CHECK(res.d >= block_sens(f));
    CHECK(res.d <= 4);
  }
}

TEST_CASE("measures respect the standard inequalities") {
  for (uint64_t w = 0; w < 256; ++w) {
    TruthTable f = table_from_word(3, w);
    int s = sensitivity(f);
    int bs = block_sens(f);
    int zbs = zero_block_sens(f);
    CHECK(s <= bs);
    CHECK(zbs <= bs);
    CHECK(bs <= decision_tree_depth(f).d);
  }
}

TEST_CASE("shifting recovers full block sensitivity with zero-valued blocks") {
  ZbsShift sh = max_zbs_shift(builtin("AND", 2));
  CHECK(sh.z == 3);
  CHECK(sh.k == 2);

  SplitMix64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    TruthTable f = random_table(4, rng);
    ZbsShift best = max_zbs_shift(f);
    CHECK(best.k == block_sens(f));
    CHECK(zero_block_sens(shift(f, best.z)) == best.k);
    for (uint32_t z = 0; z < best.z; ++z) CHECK(zero_block_sens(shift(f, z)) < best.k);
  }
}

TEST_CASE("projection keeps block sensitivity with blocks of size at most two") {
  SplitMix64 rng(9);
  std::vector<TruthTable> pool;
  for (uint64_t w = 1; w < 16; ++w) pool.push_back(table_from_word(2, w));
  for (int rep = 0; rep < 25; ++rep) {
    TruthTable f = random_table(4, rng);
    if (f.constant()) continue;
    pool.push_back(f);
  }
  for (const TruthTable& f : pool) {
    if (f.constant()) continue;
    Projection p = project_to_sensitive(f);
    CHECK(p.g.n == f.n);
    CHECK(certificate_valid(p.source, f));
    BlockSensitivity two = block_sensitivity(p.g, 2, false);
    CHECK(two.k >= block_sens(f));
  }
}
