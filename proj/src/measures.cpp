#include "bfclab/measures.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"
#include "json.hpp"

namespace bfclab {

namespace {

std::vector<int> mask_coords(uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i + 1);
  return out;
}

// best[avail] = most disjoint candidate blocks inside the coordinate set
// avail, where cand marks the usable blocks at the current witness
void block_dp(const std::vector<char>& cand, uint32_t points, std::vector<int8_t>& best) {
  best[0] = 0;
  for (uint32_t avail = 1; avail < points; ++avail) {
    uint32_t ibit = avail & (~avail + 1);
    uint32_t rest = avail ^ ibit;
    int b = best[rest];
    uint32_t sub = 0;
    do {
      uint32_t s = sub | ibit;
      if (cand[s]) b = std::max(b, 1 + best[avail ^ s]);
      sub = (sub - rest) & rest;
    } while (sub != 0);
    best[avail] = int8_t(b);
  }
}

void fill_candidates(const TruthTable& f, uint32_t z, int ell, bool zero_only,
                     std::vector<char>& cand) {
  int fz = f.value(z);
  cand[0] = 0;
  for (uint32_t s = 1; s < f.size(); ++s)
    cand[s] = std::popcount(s) <= ell && f.value(z ^ s) != fz &&
              (!zero_only || (z & s) == 0);
}

}  // namespace

bool certificate_valid(const SensitivityCertificate& c, const TruthTable& f) {
  if (c.n != f.n) return false;
  if (c.z >= f.size()) return false;
  if (c.k != int(c.blocks.size())) return false;
  uint32_t seen = 0;
  int fz = f.value(c.z);
  for (uint32_t s : c.blocks) {
    if (s == 0 || s >= f.size()) return false;
    if (std::popcount(s) > c.ell) return false;
    if (seen & s) return false;
    if (c.zero_only && (c.z & s) != 0) return false;
    if (f.value(c.z ^ s) == fz) return false;
    seen |= s;
  }
  return true;
}

std::string certificate_json(const SensitivityCertificate& c) {
  nlohmann::ordered_json j;
  j["z"] = c.z;
  j["blocks"] = nlohmann::ordered_json::array();
  for (uint32_t s : c.blocks) j["blocks"].push_back(mask_coords(s));
  j["ell"] = c.ell;
  j["zero_only"] = c.zero_only;
  j["k"] = c.k;
  return j.dump();
}

BlockSensitivity block_sensitivity(const TruthTable& f, int ell, bool zero_only) {
  int n = f.n;
  if (n > caps().bs_max_n)
    throw cap_error("block sensitivity cap bs_max_n=" + std::to_string(caps().bs_max_n) +
                    " exceeded by arity " + std::to_string(n));
  if (ell < 1) throw input_error("block size bound must be at least 1");
  ell = std::min(ell, n);
  uint32_t points = f.size();

  int best_k = -1;
  uint32_t best_z = 0;

  if (ell == 1) {
    for (uint32_t z = 0; z < points; ++z) {
      int fz = f.value(z);
      int k = 0;
      for (int i = 0; i < n; ++i) {
        uint32_t e = uint32_t(1) << i;
        if (zero_only && (z & e)) continue;
        if (f.value(z ^ e) != fz) ++k;
      }
      if (k > best_k) {
        best_k = k;
        best_z = z;
      }
    }
  } else {
    std::vector<char> cand(points);
    std::vector<int8_t> best(points);
    for (uint32_t z = 0; z < points; ++z) {
      fill_candidates(f, z, ell, zero_only, cand);
      block_dp(cand, points, best);
      if (best[points - 1] > best_k) {
        best_k = best[points - 1];
        best_z = z;
      }
    }
  }

  // reconstruct the block family at the winning witness: walk coordinates
  // from the lowest, taking the numerically smallest optimal block each time
  BlockSensitivity out;
  out.k = best_k;
  out.cert.n = n;
  out.cert.z = best_z;
  out.cert.ell = ell;
  out.cert.zero_only = zero_only;
  out.cert.k = best_k;

  std::vector<char> cand(points);
  std::vector<int8_t> best(points);
  fill_candidates(f, best_z, ell, zero_only, cand);
  block_dp(cand, points, best);
  uint32_t avail = points - 1;
  while (avail) {
    uint32_t ibit = avail & (~avail + 1);
    uint32_t rest = avail ^ ibit;
    uint32_t taken = 0;
    uint32_t sub = 0;
    do {
      uint32_t s = sub | ibit;
      if (cand[s] && 1 + best[avail ^ s] == best[avail]) {
        taken = s;
        break;
      }
      sub = (sub - rest) & rest;
    } while (sub != 0);
    if (taken) {
      out.cert.blocks.push_back(taken);
      avail ^= taken;
    } else {
      avail = rest;
    }
  }
  if (int(out.cert.blocks.size()) != best_k)
    throw std::logic_error("block reconstruction lost blocks");
  return out;
}

int sensitivity(const TruthTable& f) { return block_sensitivity(f, 1).k; }

int block_sens(const TruthTable& f) { return block_sensitivity(f, f.n).k; }

int zero_block_sens(const TruthTable& f) { return block_sensitivity(f, f.n, true).k; }

int DecisionTree::eval(uint32_t x) const {
  int at = root;
  while (nodes[at].var != 0) {
    int bit = (x >> (nodes[at].var - 1)) & 1;
    at = bit ? nodes[at].child1 : nodes[at].child0;
  }
  return nodes[at].leaf_value;
}

bool DecisionTree::agrees_with(const TruthTable& f) const {
  for (uint32_t x = 0; x < f.size(); ++x)
    if (eval(x) != f.value(x)) return false;
  return true;
}

namespace {

// packed subfunction tables on k <= 6 free variables
uint64_t table_mask(int k) {
  return k == 6 ? ~uint64_t(0) : (uint64_t(1) << (uint64_t(1) << k)) - 1;
}

uint64_t restrict_var(uint64_t t, int k, int i, int b) {
  uint64_t out = 0;
  uint64_t low = (uint64_t(1) << i) - 1;
  for (uint64_t y = 0; y < (uint64_t(1) << (k - 1)); ++y) {
    uint64_t x = ((y & ~low) << 1) | (uint64_t(b) << i) | (y & low);
    out |= ((t >> x) & 1) << y;
  }
  return out;
}

struct DepthSearch {
  // one memo per free-variable count so the packed table is the whole key
  std::vector<std::unordered_map<uint64_t, int8_t>> memo;

  explicit DepthSearch(int n) : memo(n + 1) {}

  int depth(int k, uint64_t t) {
    if (t == 0 || t == table_mask(k)) return 0;
    auto& m = memo[k];
    if (auto it = m.find(t); it != m.end()) return it->second;
    int best = k;
    for (int i = 0; i < k; ++i) {
      int d = 1 + std::max(depth(k - 1, restrict_var(t, k, i, 0)),
                           depth(k - 1, restrict_var(t, k, i, 1)));
      best = std::min(best, d);
      if (best == 1) break;
    }
    m.emplace(t, int8_t(best));
    return best;
  }

  int build(int k, uint64_t t, const std::vector<int>& vars, DecisionTree& tree) {
    DecisionTree::Node node;
    if (t == 0 || t == table_mask(k)) {
      node.leaf_value = t == 0 ? +1 : -1;
      tree.nodes.push_back(node);
      return int(tree.nodes.size()) - 1;
    }
    int d = depth(k, t);
    for (int i = 0; i < k; ++i) {
      uint64_t t0 = restrict_var(t, k, i, 0);
      uint64_t t1 = restrict_var(t, k, i, 1);
      if (1 + std::max(depth(k - 1, t0), depth(k - 1, t1)) == d) {
        std::vector<int> sub = vars;
        sub.erase(sub.begin() + i);
        node.var = vars[i];
        node.child0 = build(k - 1, t0, sub, tree);
        node.child1 = build(k - 1, t1, sub, tree);
        tree.nodes.push_back(node);
        return int(tree.nodes.size()) - 1;
      }
    }
    throw std::logic_error("decision tree memo inconsistent");
  }
};

}  // namespace

DepthResult decision_tree_depth(const TruthTable& f) {
  if (f.n > caps().dt_max_n)
    throw cap_error("decision tree cap dt_max_n=" + std::to_string(caps().dt_max_n) +
                    " exceeded by arity " + std::to_string(f.n));
  if (f.n > 6) throw cap_error("decision tree search supports arity at most 6");

  uint64_t t = f.word();
  DepthSearch search(f.n);
  DepthResult out;
  out.d = search.depth(f.n, t);
  std::vector<int> vars(f.n);
  for (int i = 0; i < f.n; ++i) vars[i] = i + 1;
  out.tree.root = search.build(f.n, t, vars, out.tree);
  out.tree.depth = out.d;
  return out;
}

Projection project_to_sensitive(const TruthTable& f) {
  Projection out;
  out.source = block_sensitivity(f, f.n).cert;
  const SensitivityCertificate& c = out.source;

  out.sigma = identity_substitution(f.n);
  std::vector<uint32_t> new_blocks;
  for (uint32_t s : c.blocks) {
    uint32_t zeros = s & ~c.z;
    uint32_t ones = s & c.z;
    uint32_t reps = 0;
    for (uint32_t part : {zeros, ones}) {
      if (part == 0) continue;
      uint32_t rep = part & (~part + 1);
      reps |= rep;
      int rep_var = std::countr_zero(rep) + 1;
      for (uint32_t rem = part; rem; rem &= rem - 1)
        out.sigma.slots[std::countr_zero(rem)].var = rep_var;
    }
    new_blocks.push_back(reps);
  }
  out.g = substitute(f, out.sigma);

  SensitivityCertificate check;
  check.n = f.n;
  check.z = c.z;
  check.blocks = new_blocks;
  check.ell = 2;
  check.k = int(new_blocks.size());
  if (!certificate_valid(check, out.g))
    throw std::logic_error("projected certificate failed validation");
  return out;
}

ZbsShift max_zbs_shift(const TruthTable& f) {
  int target = block_sens(f);
  for (uint32_t z = 0; z < f.size(); ++z) {
    if (zero_block_sens(shift(f, z)) == target) return {z, target};
  }
  throw std::logic_error("no shift reached the block sensitivity target");
}

}  // namespace bfclab
