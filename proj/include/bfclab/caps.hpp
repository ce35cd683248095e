#pragma once

#include <cstdint>

namespace bfclab {

// Size caps. Defaults are safe; BFCLAB_CAPS=key=value,key=value overrides
// them at process start (unsafe: larger values can exhaust time or memory).
struct Caps {
  int table_max_n = 20;
  int dt_max_n = 5;
  int bs_max_n = 12;
  int shift_mon_max_n = 12;
  int approx_max_n = 12;
  int witness_general_max_n = 12;
  int witness_symmetric_max_n = 200;
  long long enum_v_max = 1000000;          // |V(N,n)| = (N/n)^n
  long long pattern_max_entries = 10000000;
  long long comm_max_entries = 16777216;   // 2^12 x 2^12
  int exact_cc_max_side = 8;
  int specnorm_max_side = 512;
  int structure_max_side = 64;
  int hard_instance_max_k = 16;
};

Caps& caps();

}  // namespace bfclab
