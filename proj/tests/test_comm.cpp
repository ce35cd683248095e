#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <bit>

#include "bfclab/comm.hpp"
#include "bfclab/errors.hpp"
#include "bfclab/prng.hpp"
#include "bfclab/transforms.hpp"
#include "doctest.h"

using namespace bfclab;

namespace {

TruthTable random_table(int n, SplitMix64& rng) {
  TruthTable f(n);
  for (uint32_t x = 0; x < f.size(); ++x) f.set_bit(x, rng.next() & 1);
  return f;
}

// every leaf rectangle of a protocol tree must be monochromatic and the
// advertised depth must cover the deepest path
bool tree_valid(const ProtocolTree& t, const RatMat& m) {
  struct Frame {
    int node;
    uint32_t rmask, cmask;
    int depth;
  };
  if (t.root < 0) return false;
  std::vector<Frame> stack{{t.root, (uint32_t(1) << m.rows) - 1, (uint32_t(1) << m.cols) - 1, 0}};
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    const ProtocolTree::Node& nd = t.nodes[fr.node];
    if (nd.speaker == -1) {
      if (fr.depth > t.depth) return false;
      for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
          if (((fr.rmask >> i) & 1) && ((fr.cmask >> j) & 1) && m.at(i, j) != nd.leaf_value)
            return false;
      continue;
    }
    uint32_t side = nd.speaker == 0 ? fr.rmask : fr.cmask;
    if (nd.part0 == 0 || nd.part0 == side || (nd.part0 & ~side) != 0) return false;
    uint32_t r0 = nd.speaker == 0 ? nd.part0 : fr.rmask;
    uint32_t c0 = nd.speaker == 0 ? fr.cmask : nd.part0;
    uint32_t r1 = nd.speaker == 0 ? (fr.rmask ^ nd.part0) : fr.rmask;
    uint32_t c1 = nd.speaker == 0 ? fr.cmask : (fr.cmask ^ nd.part0);
    stack.push_back({nd.child0, r0, c0, fr.depth + 1});
    stack.push_back({nd.child1, r1, c1, fr.depth + 1});
  }
  return true;
}

}  // namespace

TEST_CASE("intersection-composed matrices have rank equal to the monomial count") {
  CommMatrix cm = comm_matrix(builtin("AND", 2), CommMode::AND);
  REQUIRE(cm.m.rows == 4);
  REQUIRE(cm.m.cols == 4);
  for (uint32_t x = 0; x < 4; ++x)
    for (uint32_t y = 0; y < 4; ++y)
      CHECK(cm.m.at(int(x), int(y)) == Rat(builtin("AND", 2).value(x & y)));
  CHECK(rational_rank(cm.m) == 2);
  CHECK(cm.labels.rows[0] == "x=00");
  CHECK(cm.labels.cols[2] == "y=01");

  CHECK(rational_rank(comm_matrix(builtin("XOR", 2), CommMode::AND).m) == 4);
  CHECK(monomial_count(builtin("XOR", 2)) == 4);

  SplitMix64 rng(21);
  for (int rep = 0; rep < 12; ++rep) {
    TruthTable f = random_table(3, rng);
    CHECK(rational_rank(comm_matrix(f, CommMode::AND).m) == Int(monomial_count(f)));
  }
}

TEST_CASE("masked composition shifts the intersection before evaluating") {
  TruthTable f = builtin("MAJ", 3);
  uint32_t z = 0b101;
  CommMatrix cm = comm_matrix(f, CommMode::MASKED, z);
  for (uint32_t x = 0; x < 8; ++x)
    for (uint32_t y = 0; y < 8; ++y) CHECK(cm.m.at(int(x), int(y)) == Rat(f.value((x & y) ^ z)));
  CHECK_THROWS_AS(comm_matrix(f, CommMode::AND, 1), input_error);
}

TEST_CASE("union composition is the complement-shifted intersection") {
  SplitMix64 rng(22);
  std::vector<TruthTable> pool = {builtin("AND", 2), builtin("OR", 3), builtin("MAJ", 3)};
  for (int rep = 0; rep < 6; ++rep) pool.push_back(random_table(3, rng));
  for (const TruthTable& g : pool) {
    uint32_t full = g.size() - 1;
    CommMatrix un = comm_matrix(g, CommMode::OR);
    CommMatrix in = comm_matrix(shift(g, full), CommMode::AND);
    for (uint32_t x = 0; x <= full; ++x)
      for (uint32_t y = 0; y <= full; ++y)
        CHECK(un.m.at(int(x), int(y)) == in.m.at(int(x ^ full), int(y ^ full)));
  }
}

TEST_CASE("gadget composition evaluates one gadget per input") {
  BitMat eq{2, 2};
  eq.at(0, 0) = 1;
  eq.at(1, 1) = 1;
  CommMatrix cm = comm_matrix(builtin("XOR", 2), CommMode::COMPOSED, 0, {eq, eq});
  REQUIRE(cm.m.rows == 4);
  REQUIRE(cm.m.cols == 4);
  for (uint32_t a = 0; a < 4; ++a)
    for (uint32_t b = 0; b < 4; ++b) {
      uint32_t u = (eq.at(a & 1, b & 1) ? 1 : 0) | ((eq.at(a >> 1, b >> 1) ? 1 : 0) << 1);
      CHECK(cm.m.at(int(a), int(b)) == Rat(builtin("XOR", 2).value(u)));
    }
  CHECK(cm.labels.rows[1] == "a=1,0");
  CHECK(cm.labels.cols[2] == "b=0,1");
  CHECK_THROWS_AS(comm_matrix(builtin("XOR", 2), CommMode::COMPOSED, 0, {eq}), input_error);
}

TEST_CASE("raw split uses the low half for the row player") {
  CommMatrix cm = comm_matrix(builtin("EQ", 2), CommMode::RAW);
  REQUIRE(cm.m.rows == 2);
  REQUIRE(cm.m.cols == 2);
  CHECK(cm.m.at(0, 0) == Rat(-1));
  CHECK(cm.m.at(1, 1) == Rat(-1));
  CHECK(cm.m.at(0, 1) == Rat(1));
  CHECK(cm.m.at(1, 0) == Rat(1));
  CHECK_THROWS_AS(comm_matrix(builtin("MAJ", 3), CommMode::RAW), input_error);
}

TEST_CASE("exact protocol depth is achieved by a checked tree") {
  ExactCC eq = deterministic_cc_exact(comm_matrix(builtin("EQ", 2), CommMode::RAW).m);
  CHECK(eq.d == 2);
  CHECK(tree_valid(eq.tree, comm_matrix(builtin("EQ", 2), CommMode::RAW).m));

  ExactCC and2 = deterministic_cc_exact(comm_matrix(builtin("AND", 2), CommMode::AND).m);
  CHECK(and2.d == 2);

  RatMat constant{3, 5};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j) constant.at(i, j) = -1;
  ExactCC c = deterministic_cc_exact(constant);
  CHECK(c.d == 0);
  CHECK(tree_valid(c.tree, constant));

  RatMat onerow{1, 4};
  for (int j = 0; j < 4; ++j) onerow.at(0, j) = j % 2 ? 1 : -1;
  ExactCC r = deterministic_cc_exact(onerow);
  CHECK(r.d == 1);
  CHECK(tree_valid(r.tree, onerow));

  SplitMix64 rng(23);
  for (int rep = 0; rep < 8; ++rep) {
    TruthTable f = random_table(3, rng);
    RatMat m = comm_matrix(f, CommMode::AND).m;
    ExactCC cc = deterministic_cc_exact(m);
    CHECK(tree_valid(cc.tree, m));
    Int rk = rational_rank(m);
    CHECK((Int(1) << cc.d) >= rk);
  }
}

TEST_CASE("simulated transcripts compute the composed value within the bit budget") {
  SplitMix64 rng(24);
  for (int rep = 0; rep < 8; ++rep) {
    TruthTable f = random_table(3, rng);
    int dt = decision_tree_depth(f).d;
    for (uint32_t x = 0; x < 8; ++x)
      for (uint32_t y = 0; y < 8; ++y) {
        ProtocolTranscript a = protocol_sim(f, CommMode::AND, x, y);
        CHECK(a.output == f.value(x & y));
        CHECK(int(a.bits.size()) <= 2 * dt);
        ProtocolTranscript o = protocol_sim(f, CommMode::OR, x, y);
        CHECK(o.output == f.value(x | y));
        CHECK(int(o.bits.size()) <= 2 * dt);
      }
  }
  CHECK_THROWS_AS(protocol_sim(builtin("AND", 2), CommMode::RAW, 0, 0), input_error);
}

TEST_CASE("the hardest shift of the conjunction is the full complement") {
  HardShift hs = hard_shift(builtin("AND", 2));
  CHECK(hs.z == 3);
  CHECK(hs.mon == 4);

  SplitMix64 rng(25);
  for (int rep = 0; rep < 10; ++rep) {
    TruthTable f = random_table(3, rng);
    HardShift best = hard_shift(f);
    for (uint32_t z = 0; z < 8; ++z) {
      long long mz = monomial_count(shift(f, z));
      CHECK(mz <= best.mon);
      if (z < best.z) CHECK(mz < best.mon);
    }
  }
}

TEST_CASE("fixing or shifting one variable keeps half the monomials") {
  RestrictionCheck rc = restriction_mon_check(builtin("OR", 2), 1);
  CHECK(rc.mon_fixed == 2);
  CHECK(rc.mon_shift == 3);
  CHECK(rc.holds);

  SplitMix64 rng(26);
  for (int rep = 0; rep < 12; ++rep) {
    TruthTable f = random_table(3, rng);
    for (int i = 1; i <= 3; ++i) {
      RestrictionCheck r = restriction_mon_check(f, i);
      CHECK(r.holds == (2 * std::max(r.mon_fixed, r.mon_shift) >= monomial_count(f)));
      CHECK(r.holds);
    }
  }
  CHECK_THROWS_AS(restriction_mon_check(builtin("OR", 2), 0), input_error);
  CHECK_THROWS_AS(restriction_mon_check(builtin("OR", 2), 3), input_error);
}
