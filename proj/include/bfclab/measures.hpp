#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfclab/truth_table.hpp"

namespace bfclab {

// witness point plus a disjoint family of sensitive blocks, each a coordinate bitmask
struct SensitivityCertificate {
  int n = 0;
  uint32_t z = 0;
  std::vector<uint32_t> blocks;
  int ell = 0;
  bool zero_only = false;
  int k = 0;
};

bool certificate_valid(const SensitivityCertificate& c, const TruthTable& f);
std::string certificate_json(const SensitivityCertificate& c);

struct BlockSensitivity {
  int k = 0;
  SensitivityCertificate cert;
};

// maximum number of disjoint sensitive blocks of size <= ell at one witness;
// zero_only restricts to witnesses that are all-zero on the union of the blocks.
// Exact for every n up to the cap; ties break to the smallest witness index,
// then to the greedy smallest-mask block family.
BlockSensitivity block_sensitivity(const TruthTable& f, int ell, bool zero_only = false);

int sensitivity(const TruthTable& f);          // ell = 1
int block_sens(const TruthTable& f);           // ell = n
int zero_block_sens(const TruthTable& f);      // ell = n, zero_only

struct DecisionTree {
  // var == 0 marks a leaf carrying leaf_value; children index into nodes
  struct Node {
    int var = 0;
    int child0 = -1;
    int child1 = -1;
    int leaf_value = 0;
  };
  std::vector<Node> nodes;
  int root = -1;
  int depth = 0;

  int eval(uint32_t x) const;
  bool agrees_with(const TruthTable& f) const;
};

struct DepthResult {
  int d = 0;
  DecisionTree tree;
};

// exact minimum decision-tree depth, memoized on the restricted subfunction
DepthResult decision_tree_depth(const TruthTable& f);

struct Projection {
  TruthTable g;
  Substitution sigma;
  SensitivityCertificate source;  // the block certificate the construction used
};

// collapse each sensitive block to one representative per side (zero part /
// one part), yielding g with bs_2(g) >= bs(f) witnessed by blocks of size <= 2
Projection project_to_sensitive(const TruthTable& f);

struct ZbsShift {
  uint32_t z = 0;
  int k = 0;
};

// smallest shift z at which the zero-only block sensitivity of f_z reaches bs(f)
ZbsShift max_zbs_shift(const TruthTable& f);

}  // namespace bfclab
