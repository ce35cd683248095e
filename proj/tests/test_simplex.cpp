#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "bfclab/prng.hpp"
#include "bfclab/simplex.hpp"
#include "doctest.h"

using namespace bfclab;

TEST_CASE("a two-variable maximization reaches the known corner") {
  LPProblem p;
  p.num_vars = 2;
  p.maximize = true;
  p.c = {Rat(3), Rat(2)};
  p.add_row(Rel::LE, Rat(4)).a = {Rat(1), Rat(1)};
  p.add_row(Rel::LE, Rat(2)).a = {Rat(1), Rat(0)};
  LPResult r = solve_lp(p);
  REQUIRE(r.status == LPStatus::OPTIMAL);
  CHECK(r.objective == Rat(10));
  CHECK(r.x[0] == Rat(2));
  CHECK(r.x[1] == Rat(2));
}

TEST_CASE("minimization flips the sense") {
  LPProblem p;
  p.num_vars = 2;
  p.maximize = false;
  p.c = {Rat(1), Rat(2)};
  p.add_row(Rel::GE, Rat(3)).a = {Rat(1), Rat(1)};
  p.add_row(Rel::GE, Rat(1)).a = {Rat(0), Rat(1)};
  LPResult r = solve_lp(p);
  REQUIRE(r.status == LPStatus::OPTIMAL);
  CHECK(r.objective == Rat(4));
  CHECK(r.x[0] == Rat(2));
  CHECK(r.x[1] == Rat(1));
}

TEST_CASE("equality rows pin the solution") {
  LPProblem p;
  p.num_vars = 2;
  p.maximize = true;
  p.c = {Rat(1), Rat(1)};
  p.add_row(Rel::EQ, Rat(3)).a = {Rat(1), Rat(1)};
  p.add_row(Rel::EQ, Rat(1)).a = {Rat(1), Rat(-1)};
  LPResult r = solve_lp(p);
  REQUIRE(r.status == LPStatus::OPTIMAL);
  CHECK(r.x[0] == Rat(2));
  CHECK(r.x[1] == Rat(1));
  CHECK(r.objective == Rat(3));
}

TEST_CASE("free variables can go negative") {
  LPProblem p;
  p.num_vars = 1;
  p.maximize = false;
  p.c = {Rat(1)};
  p.lower = {std::nullopt};
  p.add_row(Rel::GE, Rat(-5)).a = {Rat(1)};
  LPResult r = solve_lp(p);
  REQUIRE(r.status == LPStatus::OPTIMAL);
  CHECK(r.x[0] == Rat(-5));
  CHECK(r.objective == Rat(-5));
}

TEST_CASE("shifted lower and upper bounds are honored") {
  LPProblem p;
  p.num_vars = 2;
  p.maximize = true;
  p.c = {Rat(1), Rat(3)};
  p.lower = {Rat(1, 2), Rat(-2)};
  p.upper = {Rat(5), Rat(1, 3)};
  p.add_row(Rel::LE, Rat(4)).a = {Rat(1), Rat(1)};
  LPResult r = solve_lp(p);
  REQUIRE(r.status == LPStatus::OPTIMAL);
  CHECK(r.x[0] == Rat(11, 3));
  CHECK(r.x[1] == Rat(1, 3));
  CHECK(r.objective == Rat(14, 3));
}

TEST_CASE("infeasible systems come back with a checked certificate") {
  LPProblem p;
  p.num_vars = 1;
  p.maximize = true;
  p.c = {Rat(0)};
  p.add_row(Rel::GE, Rat(1)).a = {Rat(1)};
  p.add_row(Rel::LE, Rat(0)).a = {Rat(1)};
  LPResult r = solve_lp(p);
  REQUIRE(r.status == LPStatus::INFEASIBLE);
  CHECK(farkas_certificate_valid(r));

  LPProblem q;
  q.num_vars = 2;
  q.maximize = false;
  q.c = {Rat(1), Rat(1)};
  q.add_row(Rel::EQ, Rat(1)).a = {Rat(1), Rat(1)};
  q.add_row(Rel::EQ, Rat(3)).a = {Rat(1), Rat(1)};
  LPResult r2 = solve_lp(q);
  REQUIRE(r2.status == LPStatus::INFEASIBLE);
  CHECK(farkas_certificate_valid(r2));
}

TEST_CASE("unbounded directions are detected") {
  LPProblem p;
  p.num_vars = 2;
  p.maximize = true;
  p.c = {Rat(1), Rat(0)};
  p.add_row(Rel::GE, Rat(1)).a = {Rat(1), Rat(-1)};
  LPResult r = solve_lp(p);
  CHECK(r.status == LPStatus::UNBOUNDED);
}

TEST_CASE("degenerate and redundant rows do not trip the pivot rule") {
  LPProblem p;
  p.num_vars = 3;
  p.maximize = true;
  p.c = {Rat(2), Rat(3), Rat(1)};
  p.add_row(Rel::LE, Rat(5)).a = {Rat(1), Rat(1), Rat(1)};
  p.add_row(Rel::LE, Rat(5)).a = {Rat(1), Rat(1), Rat(1)};
  p.add_row(Rel::LE, Rat(0)).a = {Rat(1), Rat(-1), Rat(0)};
  p.add_row(Rel::LE, Rat(10)).a = {Rat(2), Rat(2), Rat(2)};
  LPResult r = solve_lp(p);
  REQUIRE(r.status == LPStatus::OPTIMAL);
  CHECK(r.objective == Rat(15));
  CHECK(r.x[1] == Rat(5));
}

TEST_CASE("fractional data stays exact end to end") {
  LPProblem p;
  p.num_vars = 2;
  p.maximize = true;
  p.c = {Rat(1, 3), Rat(1, 7)};
  p.add_row(Rel::LE, Rat(1, 2)).a = {Rat(2, 5), Rat(1, 11)};
  p.add_row(Rel::LE, Rat(2, 3)).a = {Rat(1, 9), Rat(3, 4)};
  LPResult r = solve_lp(p);
  REQUIRE(r.status == LPStatus::OPTIMAL);
  Rat lhs0 = Rat(2, 5) * r.x[0] + Rat(1, 11) * r.x[1];
  Rat lhs1 = Rat(1, 9) * r.x[0] + Rat(3, 4) * r.x[1];
  CHECK(lhs0 <= Rat(1, 2));
  CHECK(lhs1 <= Rat(2, 3));
  CHECK((lhs0 == Rat(1, 2) || lhs1 == Rat(2, 3)));
  CHECK(r.objective == Rat(1, 3) * r.x[0] + Rat(1, 7) * r.x[1]);
}

TEST_CASE("random feasible systems solve and verify") {
  SplitMix64 rng(99);
  for (int rep = 0; rep < 25; ++rep) {
    int nv = 2 + int(rng.next() % 3);
    int nr = 2 + int(rng.next() % 4);
    LPProblem p;
    p.num_vars = nv;
    p.maximize = (rng.next() & 1) != 0;
    for (int j = 0; j < nv; ++j) p.c.push_back(Rat(int64_t(rng.next() % 9) - 4));
    for (int i = 0; i < nr; ++i) {
      LPConstraint& row = p.add_row(Rel::LE, Rat(1 + int64_t(rng.next() % 10)));
      for (int j = 0; j < nv; ++j) row.a[j] = Rat(int64_t(rng.next() % 7) - 2);
    }
    for (int j = 0; j < nv; ++j) {
      p.lower.push_back(Rat(0));
      p.upper.push_back(Rat(6));
    }
    LPResult r = solve_lp(p);
    REQUIRE(r.status == LPStatus::OPTIMAL);
    for (const LPConstraint& row : p.rows) {
      Rat lhs = 0;
      for (int j = 0; j < nv; ++j) lhs += row.a[j] * r.x[j];
      CHECK(lhs <= row.b);
    }
    for (int j = 0; j < nv; ++j) {
      CHECK(r.x[j] >= Rat(0));
      CHECK(r.x[j] <= Rat(6));
    }
  }
}
