#pragma once

#include <optional>
#include <vector>

#include "bfclab/rational.hpp"

namespace bfclab {

enum class Rel { LE, EQ, GE };

enum class LPStatus { OPTIMAL, INFEASIBLE, UNBOUNDED };

struct LPConstraint {
  std::vector<Rat> a;
  Rel rel = Rel::LE;
  Rat b;
};

// max (or min) c.x subject to the rows and per-variable bounds.
// Default bound is x >= 0; lower = nullopt makes a variable free.
struct LPProblem {
  int num_vars = 0;
  bool maximize = true;
  std::vector<Rat> c;
  std::vector<LPConstraint> rows;
  std::vector<std::optional<Rat>> lower;  // per-variable; size 0 means all zero
  std::vector<std::optional<Rat>> upper;  // per-variable; size 0 means none

  LPConstraint& add_row(Rel rel, const Rat& b);
};

struct LPResult {
  LPStatus status = LPStatus::INFEASIBLE;
  std::vector<Rat> x;       // feasible optimum, re-checked against every row
  Rat objective;
  // Infeasibility certificate over the canonical form A'x >= b', x >= 0 of the
  // problem: y >= 0 with y.A' <= 0 columnwise and y.b' > 0, re-verified before
  // INFEASIBLE is reported. canon_a/canon_b expose that form for auditing.
  std::vector<Rat> farkas_y;
  std::vector<std::vector<Rat>> canon_a;
  std::vector<Rat> canon_b;
};

LPResult solve_lp(const LPProblem& p);

// exact re-check of the certificate fields of an INFEASIBLE result
bool farkas_certificate_valid(const LPResult& r);

}  // namespace bfclab
