#include "bfclab/structure.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"
#include "json.hpp"

namespace bfclab {

namespace {

void check_gadget(const BitMat& g) {
  if (g.rows < 1 || g.cols < 1) throw input_error("matrix must be nonempty");
  if (g.rows > caps().structure_max_side || g.cols > caps().structure_max_side)
    throw cap_error("structure cap structure_max_side=" +
                    std::to_string(caps().structure_max_side) + " exceeded by " +
                    std::to_string(g.rows) + "x" + std::to_string(g.cols));
  for (int v : g.a)
    if (v != 0 && v != 1) throw input_error("matrix entries must be 0 or 1");
}

bool pattern_scan(const BitMat& g, int ones_wanted, int idx[4]) {
  for (int r1 = 0; r1 < g.rows; ++r1)
    for (int r2 = r1 + 1; r2 < g.rows; ++r2)
      for (int c1 = 0; c1 < g.cols; ++c1)
        for (int c2 = c1 + 1; c2 < g.cols; ++c2) {
          int ones = g.at(r1, c1) + g.at(r1, c2) + g.at(r2, c1) + g.at(r2, c2);
          if (ones == ones_wanted) {
            if (idx) {
              idx[0] = r1;
              idx[1] = r2;
              idx[2] = c1;
              idx[3] = c2;
            }
            return true;
          }
        }
  return false;
}

}  // namespace

bool forbidden_pattern_scan(const BitMat& g, int idx[4]) {
  check_gadget(g);
  return pattern_scan(g, 3, idx);
}

bool single_one_pattern_scan(const BitMat& g, int idx[4]) {
  check_gadget(g);
  return pattern_scan(g, 1, idx);
}

StructureReport structure_decompose(const BitMat& g) {
  check_gadget(g);
  StructureReport out;

  std::vector<uint64_t> supp(g.rows, 0);
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c)
      if (g.at(r, c)) supp[r] |= uint64_t(1) << c;

  bool any_one = false, any_zero = false;
  for (int r = 0; r < g.rows; ++r) {
    if (supp[r] != 0) any_one = true;
    uint64_t full = g.cols == 64 ? ~uint64_t(0) : (uint64_t(1) << g.cols) - 1;
    if (supp[r] != full) any_zero = true;
  }
  if (!any_one) {
    out.verdict = StructureReport::Verdict::ZERO;
    return out;
  }
  if (!any_zero) {
    out.verdict = StructureReport::Verdict::ALL_ONES;
    return out;
  }

  // supports must be pairwise equal or disjoint; an overlapping unequal pair
  // pinpoints a submatrix with exactly one zero
  for (int r1 = 0; r1 < g.rows; ++r1) {
    if (supp[r1] == 0) continue;
    for (int r2 = r1 + 1; r2 < g.rows; ++r2) {
      if (supp[r2] == 0) continue;
      if (supp[r1] == supp[r2] || (supp[r1] & supp[r2]) == 0) continue;
      uint64_t common = supp[r1] & supp[r2];
      uint64_t differ = supp[r1] ^ supp[r2];
      int c_common = std::countr_zero(common);
      int c_differ = std::countr_zero(differ);
      out.verdict = StructureReport::Verdict::WITNESS;
      out.r1 = r1;
      out.r2 = r2;
      out.c1 = std::min(c_common, c_differ);
      out.c2 = std::max(c_common, c_differ);
      return out;
    }
  }

  out.verdict = StructureReport::Verdict::BLOCKS;
  std::map<uint64_t, std::vector<int>> groups;  // support -> rows, first row decides order
  std::vector<uint64_t> order;
  for (int r = 0; r < g.rows; ++r) {
    if (supp[r] == 0) {
      out.zero_rows.push_back(r);
      continue;
    }
    auto [it, fresh] = groups.try_emplace(supp[r]);
    if (fresh) order.push_back(supp[r]);
    it->second.push_back(r);
  }
  uint64_t covered = 0;
  for (uint64_t s : order) {
    const std::vector<int>& rows = groups[s];
    int cols = std::popcount(s);
    out.block_sizes.emplace_back(int(rows.size()), cols);
    for (int r : rows) out.row_order.push_back(r);
    for (uint64_t rem = s; rem; rem &= rem - 1)
      out.col_order.push_back(std::countr_zero(rem));
    covered |= s;
  }
  for (int c = 0; c < g.cols; ++c)
    if (!((covered >> c) & 1)) out.zero_cols.push_back(c);
  return out;
}

std::string structure_json(const StructureReport& r) {
  nlohmann::ordered_json j;
  switch (r.verdict) {
    case StructureReport::Verdict::ZERO:
      j["verdict"] = "zero";
      break;
    case StructureReport::Verdict::ALL_ONES:
      j["verdict"] = "all-ones";
      break;
    case StructureReport::Verdict::BLOCKS: {
      j["verdict"] = "block-decomposition";
      j["row_order"] = r.row_order;
      j["col_order"] = r.col_order;
      auto sizes = nlohmann::ordered_json::array();
      for (auto [br, bc] : r.block_sizes) sizes.push_back({br, bc});
      j["block_sizes"] = sizes;
      j["zero_rows"] = r.zero_rows;
      j["zero_cols"] = r.zero_cols;
      break;
    }
    case StructureReport::Verdict::WITNESS:
      j["verdict"] = "witness";
      j["rows"] = {r.r1, r.r2};
      j["cols"] = {r.c1, r.c2};
      break;
  }
  return j.dump();
}

namespace {

BitMat dedupe(const BitMat& g) {
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < g.rows; ++r) {
    std::vector<int> row(g.cols);
    for (int c = 0; c < g.cols; ++c) row[c] = g.at(r, c);
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
  }
  std::vector<std::vector<int>> cols;
  for (int c = 0; c < g.cols; ++c) {
    std::vector<int> col;
    for (const auto& row : rows) col.push_back(row[c]);
    if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(col);
  }
  BitMat out(int(rows.size()), int(cols.size()));
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) out.at(r, c) = cols[c][r];
  return out;
}

// permutation of an identity with at most one zero row and one zero column,
// identity part at least 2x2
bool match_exceptional(const BitMat& d, std::string& shape) {
  int zero_rows = 0, zero_cols = 0, part = 0;
  std::vector<int> col_used(d.cols, 0);
  for (int r = 0; r < d.rows; ++r) {
    int ones = 0, where = -1;
    for (int c = 0; c < d.cols; ++c)
      if (d.at(r, c)) {
        ++ones;
        where = c;
      }
    if (ones == 0) {
      ++zero_rows;
    } else if (ones == 1) {
      if (col_used[where]) return false;
      col_used[where] = 1;
      ++part;
    } else {
      return false;
    }
  }
  for (int c = 0; c < d.cols; ++c)
    if (!col_used[c]) ++zero_cols;
  if (zero_rows > 1 || zero_cols > 1 || part < 2) return false;
  if (zero_rows == 0 && zero_cols == 0)
    shape = "I";
  else if (zero_rows == 1 && zero_cols == 0)
    shape = "I+0row";
  else if (zero_rows == 0)
    shape = "I+0col";
  else
    shape = "I+0block";
  return true;
}

}  // namespace

GadgetReport gadget_classify(const BitMat& g) {
  check_gadget(g);
  GadgetReport out;
  BitMat d = dedupe(g);
  out.has_single_one = pattern_scan(d, 1, nullptr);
  out.has_single_zero = pattern_scan(d, 3, nullptr);
  if (out.has_single_one && out.has_single_zero) {
    out.cls = GadgetClass::BOTH_PATTERNS;
    return out;
  }

  if (match_exceptional(d, out.shape)) {
    out.cls = GadgetClass::EXCEPTIONAL;
    return out;
  }
  BitMat neg(d.rows, d.cols);
  for (size_t i = 0; i < d.a.size(); ++i) neg.a[i] = 1 - d.a[i];
  if (match_exceptional(neg, out.shape)) {
    out.cls = GadgetClass::EXCEPTIONAL;
    out.negated = true;
    return out;
  }
  out.cls = GadgetClass::OTHER;
  return out;
}

std::string gadget_json(const GadgetReport& r) {
  nlohmann::ordered_json j;
  j["class"] = r.cls == GadgetClass::BOTH_PATTERNS ? "both-patterns"
               : r.cls == GadgetClass::EXCEPTIONAL ? "exceptional"
                                                   : "other";
  j["single_one"] = r.has_single_one;
  j["single_zero"] = r.has_single_zero;
  if (r.cls == GadgetClass::EXCEPTIONAL) {
    j["shape"] = r.shape;
    j["negated"] = r.negated;
  }
  return j.dump();
}

}  // namespace bfclab
