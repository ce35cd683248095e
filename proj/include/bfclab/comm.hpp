#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfclab/matrix.hpp"
#include "bfclab/measures.hpp"
#include "bfclab/truth_table.hpp"

namespace bfclab {

enum class CommMode { AND, OR, MASKED, COMPOSED, RAW };

// [f(x op y)] over all input pairs, or the gadget-composed variant
struct CommMatrix {
  RatMat m;  // entries +-1
  CommMode mode = CommMode::RAW;
  uint32_t z = 0;               // MASKED only
  std::vector<BitMat> gadgets;  // COMPOSED only, one per input of f
  TruthTable f;
  MatrixLabels labels;
};

CommMatrix comm_matrix(const TruthTable& f, CommMode mode, uint32_t z = 0,
                       const std::vector<BitMat>& gadgets = {});

// communication protocol tree over a sign matrix: each internal node is one
// bit spoken by Alice (a row bipartition) or Bob (a column bipartition)
struct ProtocolTree {
  struct Node {
    int speaker = 0;     // 0 = Alice splits rows, 1 = Bob splits columns
    uint32_t part0 = 0;  // subset (bitmask within the current rectangle) sent as 0
    int child0 = -1;
    int child1 = -1;
    int leaf_value = 0;  // leaves: speaker = -1
  };
  std::vector<Node> nodes;
  int root = -1;
  int depth = 0;
};

struct ExactCC {
  int d = 0;
  ProtocolTree tree;
};

// exact deterministic communication complexity, sides capped at 8
ExactCC deterministic_cc_exact(const RatMat& signs);

struct ProtocolTranscript {
  struct Exchange {
    char speaker = 'A';
    int bit = 0;
  };
  std::vector<Exchange> bits;
  int output = 0;
};

// both parties walk the optimal decision tree of f, announcing their bit of
// each queried variable; 2 bits per query, so at most 2 dt(f) in total
ProtocolTranscript protocol_sim(const TruthTable& f, CommMode mode, uint32_t x, uint32_t y);
// variant reusing a prebuilt tree, for callers sweeping many input pairs
ProtocolTranscript protocol_sim(const TruthTable& f, CommMode mode, uint32_t x, uint32_t y,
                                const DepthResult& dt);

struct HardShift {
  uint32_t z = 0;
  long long mon = 0;
};

// shift maximizing the monomial count, exhaustive over all z
HardShift hard_shift(const TruthTable& f);

struct RestrictionCheck {
  long long mon_fixed = 0;  // mon of f with x_i := 0
  long long mon_shift = 0;  // mon of f shifted by e_i
  bool holds = false;       // max of the two >= mon(f) / 2
};

RestrictionCheck restriction_mon_check(const TruthTable& f, int i);

}  // namespace bfclab
