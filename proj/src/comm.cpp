#include "bfclab/comm.hpp"

#include <bit>
#include <stdexcept>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"
#include "bfclab/transforms.hpp"

namespace bfclab {

namespace {

std::string bit_string(uint32_t x, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if ((x >> i) & 1) s[i] = '1';
  return s;
}

void check_entries(const RatMat& m) {
  if (m.rows < 1 || m.cols < 1) throw input_error("matrix must be nonempty");
  for (const Rat& v : m.a)
    if (v != 1 && v != -1) throw input_error("sign matrix entries must be +1 or -1");
}

}  // namespace

CommMatrix comm_matrix(const TruthTable& f, CommMode mode, uint32_t z,
                       const std::vector<BitMat>& gadgets) {
  CommMatrix out;
  out.mode = mode;
  out.f = f;
  out.z = z;

  if (mode == CommMode::AND || mode == CommMode::OR || mode == CommMode::MASKED) {
    if (mode != CommMode::MASKED && z != 0)
      throw input_error("a base point is only meaningful for the masked mode");
    if (z >= f.size()) throw input_error("base point outside the cube");
    long long side = 1LL << f.n;
    if (side * side > caps().comm_max_entries)
      throw cap_error("matrix cap comm_max_entries=" +
                      std::to_string(caps().comm_max_entries) + " exceeded");
    out.m = RatMat(int(side), int(side));
    for (uint32_t x = 0; x < uint32_t(side); ++x)
      for (uint32_t y = 0; y < uint32_t(side); ++y) {
        uint32_t point = mode == CommMode::OR ? (x | y) : ((x & y) ^ z);
        out.m.at(int(x), int(y)) = f.value(point);
      }
    for (uint32_t x = 0; x < uint32_t(side); ++x) {
      out.labels.rows.push_back("x=" + bit_string(x, f.n));
      out.labels.cols.push_back("y=" + bit_string(x, f.n));
    }
    return out;
  }

  if (mode == CommMode::COMPOSED) {
    if (int(gadgets.size()) != f.n)
      throw input_error("composition needs one gadget per input of f");
    long long rows = 1, cols = 1;
    for (const BitMat& g : gadgets) {
      if (g.rows < 1 || g.cols < 1) throw input_error("gadgets must be nonempty");
      for (int v : g.a)
        if (v != 0 && v != 1) throw input_error("gadget entries must be 0 or 1");
      rows *= g.rows;
      cols *= g.cols;
      if (rows * cols > caps().comm_max_entries)
        throw cap_error("matrix cap comm_max_entries=" +
                        std::to_string(caps().comm_max_entries) + " exceeded");
    }
    out.gadgets = gadgets;
    out.m = RatMat(int(rows), int(cols));
    // tuple indices in mixed radix, the first gadget least significant
    for (long long a = 0; a < rows; ++a) {
      for (long long b = 0; b < cols; ++b) {
        long long ra = a, rb = b;
        uint32_t point = 0;
        for (int i = 0; i < f.n; ++i) {
          int ai = int(ra % gadgets[i].rows);
          int bi = int(rb % gadgets[i].cols);
          ra /= gadgets[i].rows;
          rb /= gadgets[i].cols;
          point |= uint32_t(gadgets[i].at(ai, bi)) << i;
        }
        out.m.at(int(a), int(b)) = f.value(point);
      }
    }
    for (long long a = 0; a < rows; ++a) {
      long long ra = a;
      std::string tag = "a=";
      for (int i = 0; i < f.n; ++i) {
        if (i) tag += ',';
        tag += std::to_string(ra % gadgets[i].rows);
        ra /= gadgets[i].rows;
      }
      out.labels.rows.push_back(tag);
    }
    for (long long b = 0; b < cols; ++b) {
      long long rb = b;
      std::string tag = "b=";
      for (int i = 0; i < f.n; ++i) {
        if (i) tag += ',';
        tag += std::to_string(rb % gadgets[i].cols);
        rb /= gadgets[i].cols;
      }
      out.labels.cols.push_back(tag);
    }
    return out;
  }

  // raw split: Alice holds the low half of the inputs, Bob the high half
  if (f.n % 2 != 0) throw input_error("the raw split needs an even arity");
  int h = f.n / 2;
  long long side = 1LL << h;
  out.m = RatMat(int(side), int(side));
  for (uint32_t x = 0; x < uint32_t(side); ++x)
    for (uint32_t y = 0; y < uint32_t(side); ++y)
      out.m.at(int(x), int(y)) = f.value((y << h) | x);
  for (uint32_t x = 0; x < uint32_t(side); ++x) {
    out.labels.rows.push_back("x=" + bit_string(x, h));
    out.labels.cols.push_back("y=" + bit_string(x, h));
  }
  return out;
}

namespace {

struct RectSearch {
  int rows, cols;
  std::vector<uint32_t> neg;  // per row, columns holding -1
  std::vector<int8_t> memo;   // keyed by (rowmask << 8) | colmask

  explicit RectSearch(const RatMat& m) : rows(m.rows), cols(m.cols), neg(m.rows, 0) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (m.at(r, c) < 0) neg[r] |= uint32_t(1) << c;
    memo.assign(size_t(1) << 16, int8_t(-1));
  }

  // +1, -1, or 0 when the rectangle is not monochromatic
  int constant_value(uint32_t rmask, uint32_t cmask) const {
    int first = std::countr_zero(rmask);
    uint32_t pattern = neg[first] & cmask;
    if (pattern != 0 && pattern != cmask) return 0;
    for (uint32_t rem = rmask & (rmask - 1); rem; rem &= rem - 1)
      if ((neg[std::countr_zero(rem)] & cmask) != pattern) return 0;
    return pattern == 0 ? +1 : -1;
  }

  int depth(uint32_t rmask, uint32_t cmask) {
    size_t key = (size_t(rmask) << 8) | cmask;
    if (memo[key] >= 0) return memo[key];
    int best;
    if (constant_value(rmask, cmask) != 0) {
      best = 0;
    } else {
      best = rows + cols;
      for (int speaker = 0; speaker < 2 && best > 1; ++speaker) {
        uint32_t whole = speaker == 0 ? rmask : cmask;
        uint32_t low = whole & (~whole + 1);
        uint32_t rest = whole ^ low;
        uint32_t sub = 0;
        while (true) {
          if (sub != rest) {
            uint32_t part0 = sub | low;
            uint32_t part1 = whole ^ part0;
            int d;
            if (speaker == 0)
              d = 1 + std::max(depth(part0, cmask), depth(part1, cmask));
            else
              d = 1 + std::max(depth(rmask, part0), depth(rmask, part1));
            best = std::min(best, d);
            if (best == 1) break;
          }
          if (sub == rest) break;
          sub = (sub - rest) & rest;
        }
      }
    }
    memo[key] = int8_t(best);
    return best;
  }

  int build(uint32_t rmask, uint32_t cmask, ProtocolTree& tree) {
    ProtocolTree::Node node;
    int value = constant_value(rmask, cmask);
    if (value != 0) {
      node.speaker = -1;
      node.leaf_value = value;
      tree.nodes.push_back(node);
      return int(tree.nodes.size()) - 1;
    }
    int d = depth(rmask, cmask);
    for (int speaker = 0; speaker < 2; ++speaker) {
      uint32_t whole = speaker == 0 ? rmask : cmask;
      uint32_t low = whole & (~whole + 1);
      uint32_t rest = whole ^ low;
      uint32_t sub = 0;
      while (true) {
        if (sub != rest) {
          uint32_t part0 = sub | low;
          uint32_t part1 = whole ^ part0;
          int d0 = speaker == 0 ? depth(part0, cmask) : depth(rmask, part0);
          int d1 = speaker == 0 ? depth(part1, cmask) : depth(rmask, part1);
          if (1 + std::max(d0, d1) == d) {
            node.speaker = speaker;
            node.part0 = part0;
            if (speaker == 0) {
              node.child0 = build(part0, cmask, tree);
              node.child1 = build(part1, cmask, tree);
            } else {
              node.child0 = build(rmask, part0, tree);
              node.child1 = build(rmask, part1, tree);
            }
            tree.nodes.push_back(node);
            return int(tree.nodes.size()) - 1;
          }
        }
        if (sub == rest) break;
        sub = (sub - rest) & rest;
      }
    }
    throw std::logic_error("protocol memo inconsistent");
  }
};

}  // namespace

ExactCC deterministic_cc_exact(const RatMat& signs) {
  check_entries(signs);
  if (signs.rows > caps().exact_cc_max_side || signs.cols > caps().exact_cc_max_side)
    throw cap_error("exact protocol cap exact_cc_max_side=" +
                    std::to_string(caps().exact_cc_max_side) + " exceeded by " +
                    std::to_string(signs.rows) + "x" + std::to_string(signs.cols));

  RectSearch search(signs);
  uint32_t rmask = (uint32_t(1) << signs.rows) - 1;
  uint32_t cmask = (uint32_t(1) << signs.cols) - 1;
  ExactCC out;
  out.d = search.depth(rmask, cmask);
  out.tree.root = search.build(rmask, cmask, out.tree);
  out.tree.depth = out.d;
  return out;
}

ProtocolTranscript protocol_sim(const TruthTable& f, CommMode mode, uint32_t x, uint32_t y) {
  return protocol_sim(f, mode, x, y, decision_tree_depth(f));
}

ProtocolTranscript protocol_sim(const TruthTable& f, CommMode mode, uint32_t x, uint32_t y,
                                const DepthResult& dt) {
  if (mode != CommMode::AND && mode != CommMode::OR)
    throw input_error("the query protocol runs on the AND or OR composition");
  if (x >= f.size() || y >= f.size()) throw input_error("protocol input outside the cube");

  ProtocolTranscript out;
  int at = dt.tree.root;
  while (dt.tree.nodes[at].var != 0) {
    int var = dt.tree.nodes[at].var;
    int xb = int((x >> (var - 1)) & 1);
    int yb = int((y >> (var - 1)) & 1);
    out.bits.push_back({'A', xb});
    out.bits.push_back({'B', yb});
    int combined = mode == CommMode::AND ? (xb & yb) : (xb | yb);
    at = combined ? dt.tree.nodes[at].child1 : dt.tree.nodes[at].child0;
  }
  out.output = dt.tree.nodes[at].leaf_value;
  return out;
}

HardShift hard_shift(const TruthTable& f) {
  if (f.n > caps().shift_mon_max_n)
    throw cap_error("shift scan cap shift_mon_max_n=" +
                    std::to_string(caps().shift_mon_max_n) + " exceeded by arity " +
                    std::to_string(f.n));
  HardShift out;
  out.mon = -1;
  for (uint32_t z = 0; z < f.size(); ++z) {
    long long m = monomial_count(shift(f, z));
    if (m > out.mon) {
      out.mon = m;
      out.z = z;
    }
  }
  return out;
}

RestrictionCheck restriction_mon_check(const TruthTable& f, int i) {
  if (i < 1 || i > f.n) throw input_error("coordinate index out of range");
  if (f.n < 2) throw input_error("restriction needs at least two inputs");

  Substitution sigma;
  sigma.m = f.n - 1;
  sigma.slots.resize(f.n);
  for (int j = 0, next = 1; j < f.n; ++j) {
    if (j == i - 1)
      sigma.slots[j] = Symbol{0, 0};
    else
      sigma.slots[j] = Symbol{next++, 0};
  }

  RestrictionCheck out;
  out.mon_fixed = monomial_count(substitute(f, sigma));
  out.mon_shift = monomial_count(shift(f, uint32_t(1) << (i - 1)));
  out.holds = 2 * std::max(out.mon_fixed, out.mon_shift) >= monomial_count(f);
  return out;
}

}  // namespace bfclab
