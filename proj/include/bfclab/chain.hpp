#pragma once

#include <optional>
#include <string>

#include "bfclab/comm.hpp"
#include "bfclab/discrepancy.hpp"
#include "bfclab/measures.hpp"
#include "bfclab/rational.hpp"
#include "bfclab/transforms.hpp"
#include "bfclab/truth_table.hpp"

namespace bfclab {

// One-stop report tying the query, polynomial, and communication measures of
// a single function together, with every cross-measure inequality the tool
// knows checked on the spot.
struct ChainReport {
  int n = 0;
  std::string hex;

  Int rank_and;
  Int rank_or;
  long long mon = 0;
  int deg = 0;
  int bs = 0;
  int s = 0;
  int dt = 0;

  // exact deterministic communication of the lifted matrices, when the side
  // is within the exact-solver cap
  std::optional<int> d_exact_and;
  std::optional<int> d_exact_or;
  bool d_exact_available = false;

  // [log2 max rank, 2*dt] bracket on the lifted communication complexity
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;

  // bs^{1/4} heuristic proxy, always reported; the certified bound is only
  // present when a degree-4+ sensitive block pattern admits the hard-instance
  // pipeline
  double bs_proxy = 0.0;
  std::optional<double> disc_bound;
  bool disc_available = false;
  int disc_k = 0;
  uint32_t disc_z = 0;
  int disc_side = 0;

  bool rank_equals_mon = false;
  bool rank_degree_lb = false;   // max rank >= (3/(2*sqrt(2)))^deg
  bool cc_rank_lb = false;       // D >= log2 rank (when D available)
  bool cc_dt_ub = false;         // D <= 2*dt (when D available)
  bool mon_shift_lb = false;     // max_z mon(f_z) >= (3/2)^deg
  bool dt_bs_cube = false;       // dt <= bs^3
  bool chain_ok = false;
};

ChainReport chain_report(const TruthTable& f);
std::string chain_json(const ChainReport& r);

}  // namespace bfclab
