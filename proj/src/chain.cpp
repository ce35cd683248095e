#include "bfclab/chain.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"
#include "bfclab/matrix.hpp"
#include "json.hpp"

namespace bfclab {

namespace {

Int ipow(int base, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

double rounded(double v) { return std::stod(float_str(v)); }

struct DiscRoute {
  bool found = false;
  uint32_t z = 0;
  int side = 0;
  int k = 0;
  std::vector<int> coords;  // 1-based, ascending
};

// first witness point (and side) carrying the most single-coordinate
// sensitive directions whose witness bit matches the side, rounded down to a
// multiple of four
DiscRoute find_route(const TruthTable& g) {
  DiscRoute best;
  for (uint32_t z = 0; z < g.size(); ++z) {
    for (int side = 0; side < 2; ++side) {
      std::vector<int> coords;
      for (int i = 0; i < g.n; ++i) {
        if (int((z >> i) & 1) != side) continue;
        if (g.value(z ^ (uint32_t(1) << i)) != g.value(z)) coords.push_back(i + 1);
      }
      int k = 4 * (int(coords.size()) / 4);
      if (k >= 4 && k > best.k) {
        coords.resize(k);
        best = DiscRoute{true, z, side, k, std::move(coords)};
      }
    }
  }
  return best;
}

}  // namespace

ChainReport chain_report(const TruthTable& f) {
  if (f.n > caps().dt_max_n)
    throw cap_error("report cap dt_max_n=" + std::to_string(caps().dt_max_n) +
                    " exceeded by arity " + std::to_string(f.n));
  ChainReport r;
  r.n = f.n;
  r.hex = table_hex(f);

  CommMatrix f1 = comm_matrix(f, CommMode::AND);
  CommMatrix f2 = comm_matrix(f, CommMode::OR);
  r.rank_and = rational_rank(f1.m);
  r.rank_or = rational_rank(f2.m);
  r.mon = monomial_count(f);
  r.deg = degree(f);
  r.bs = block_sens(f);
  r.s = sensitivity(f);
  r.dt = decision_tree_depth(f).d;

  if ((1 << f.n) <= caps().exact_cc_max_side) {
    r.d_exact_and = deterministic_cc_exact(f1.m).d;
    r.d_exact_or = deterministic_cc_exact(f2.m).d;
    r.d_exact_available = true;
  }

  Int maxrk = std::max(r.rank_and, r.rank_or);
  r.bracket_lo = std::log2(maxrk.convert_to<double>());
  r.bracket_hi = 2.0 * r.dt;
  r.bs_proxy = std::pow(double(r.bs), 0.25);

  if (!f.constant()) {
    Projection proj = project_to_sensitive(f);
    DiscRoute route = find_route(proj.g);
    if (route.found) {
      uint32_t full = proj.g.size() - 1;
      TruthTable base = route.side == 1 ? shift(proj.g, full) : proj.g;
      uint32_t zz = route.side == 1 ? (route.z ^ full) : route.z;

      Substitution sigma;
      sigma.m = base.n;
      sigma.slots.resize(base.n);
      std::vector<int> newpos(base.n + 1, 0);
      int next = 1;
      for (int c : route.coords) newpos[c] = next++;
      for (int c = 1; c <= base.n; ++c)
        if (newpos[c] == 0) newpos[c] = next++;
      for (int j = 0; j < base.n; ++j) sigma.slots[j].var = newpos[j + 1];
      TruthTable h = substitute(base, sigma);
      uint32_t zp = 0;
      for (int c = 1; c <= base.n; ++c)
        if ((zz >> (c - 1)) & 1) zp |= uint32_t(1) << (newpos[c] - 1);

      HardInstance inst = build_hard_instance(h, route.k, zp);
      Discrepancy disc = discrepancy_bound(inst.psi_mat, inst.m_mat);
      r.disc_bound = disc.bound;
      r.disc_available = true;
      r.disc_k = route.k;
      r.disc_z = route.z;
      r.disc_side = route.side;
    }
  }

  r.rank_equals_mon = r.rank_and == r.mon;
  r.rank_degree_lb = maxrk * maxrk * ipow(2, 3 * r.deg) >= ipow(3, 2 * r.deg);
  if (r.d_exact_available) {
    r.cc_rank_lb = ipow(2, *r.d_exact_and) >= r.rank_and && ipow(2, *r.d_exact_or) >= r.rank_or;
    r.cc_dt_ub = *r.d_exact_and <= 2 * r.dt && *r.d_exact_or <= 2 * r.dt;
  }
  r.mon_shift_lb = Int(hard_shift(f).mon) * ipow(2, r.deg) >= ipow(3, r.deg);
  r.dt_bs_cube = r.dt <= r.bs * r.bs * r.bs;
  r.chain_ok = r.rank_equals_mon && r.rank_degree_lb && r.mon_shift_lb && r.dt_bs_cube &&
               (!r.d_exact_available || (r.cc_rank_lb && r.cc_dt_ub));
  return r;
}

std::string chain_json(const ChainReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["hex"] = r.hex;
  j["rank_and"] = r.rank_and.convert_to<long long>();
  j["rank_or"] = r.rank_or.convert_to<long long>();
  j["mon"] = r.mon;
  j["deg"] = r.deg;
  j["bs"] = r.bs;
  j["s"] = r.s;
  j["dt"] = r.dt;
  if (r.d_exact_available) {
    j["d_exact_and"] = *r.d_exact_and;
    j["d_exact_or"] = *r.d_exact_or;
  } else {
    j["d_exact_and"] = nullptr;
    j["d_exact_or"] = nullptr;
  }
  j["d_exact_available"] = r.d_exact_available;
  j["bracket_lo"] = rounded(r.bracket_lo);
  j["bracket_hi"] = rounded(r.bracket_hi);
  j["bs_proxy"] = rounded(r.bs_proxy);
  if (r.disc_available) {
    j["disc_bound"] = rounded(*r.disc_bound);
    j["disc_k"] = r.disc_k;
    j["disc_z"] = r.disc_z;
    j["disc_side"] = r.disc_side;
  } else {
    j["disc_bound"] = nullptr;
  }
  j["disc_available"] = r.disc_available;
  nlohmann::ordered_json checks;
  checks["rank_equals_mon"] = r.rank_equals_mon;
  checks["rank_degree_lb"] = r.rank_degree_lb;
  if (r.d_exact_available) {
    checks["cc_rank_lb"] = r.cc_rank_lb;
    checks["cc_dt_ub"] = r.cc_dt_ub;
  }
  checks["mon_shift_lb"] = r.mon_shift_lb;
  checks["dt_bs_cube"] = r.dt_bs_cube;
  j["checks"] = checks;
  j["chain_ok"] = r.chain_ok;
  return j.dump();
}

}  // namespace bfclab
