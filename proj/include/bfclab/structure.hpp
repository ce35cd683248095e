#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bfclab/matrix.hpp"

namespace bfclab {

// forbidden pattern: a 2x2 submatrix with exactly one zero entry (the
// one-zero-three-ones shape, closed under row/column permutation).
// Returns true and fills the indices when one exists.
bool forbidden_pattern_scan(const BitMat& g, int idx[4] = nullptr);

// 2x2 submatrix with exactly one 1
bool single_one_pattern_scan(const BitMat& g, int idx[4] = nullptr);

struct StructureReport {
  enum class Verdict { ZERO, ALL_ONES, BLOCKS, WITNESS };
  Verdict verdict = Verdict::ZERO;

  // BLOCKS: permutations and block sizes; reassembling all-ones blocks of the
  // given sizes along row_order/col_order reproduces the input minus its
  // all-zero rows and columns
  std::vector<int> row_order;
  std::vector<int> col_order;
  std::vector<std::pair<int, int>> block_sizes;
  std::vector<int> zero_rows;
  std::vector<int> zero_cols;

  // WITNESS: rows r1 < r2, cols c1 < c2 realizing the forbidden pattern
  int r1 = -1, r2 = -1, c1 = -1, c2 = -1;
};

StructureReport structure_decompose(const BitMat& g);
std::string structure_json(const StructureReport& r);

enum class GadgetClass { BOTH_PATTERNS, EXCEPTIONAL, OTHER };

struct GadgetReport {
  GadgetClass cls = GadgetClass::OTHER;
  bool has_single_one = false;   // [[1,0],[0,0]] pattern present
  bool has_single_zero = false;  // [[0,1],[1,1]] pattern present
  std::string shape;             // EXCEPTIONAL: I, I+0row, I+0col, I+0block
  bool negated = false;
};

// deduplicates identical rows and columns, then classifies: both patterns
// present, an identity-like exceptional shape (identity part >= 2, possibly
// negated, possibly one extra zero row/column), or anything else
GadgetReport gadget_classify(const BitMat& g);

std::string gadget_json(const GadgetReport& r);

}  // namespace bfclab
