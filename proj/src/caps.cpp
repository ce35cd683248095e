#include "bfclab/caps.hpp"

#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include "bfclab/errors.hpp"

namespace bfclab {

namespace {

Caps parse_env() {
  Caps c;
  const char* raw = std::getenv("BFCLAB_CAPS");
  if (raw == nullptr || *raw == '\0') return c;

  std::map<std::string, long long*> keys = {
      {"enum_v_max", &c.enum_v_max},
      {"pattern_max_entries", &c.pattern_max_entries},
      {"comm_max_entries", &c.comm_max_entries},
  };
  std::map<std::string, int*> int_keys = {
      {"table_max_n", &c.table_max_n},
      {"dt_max_n", &c.dt_max_n},
      {"bs_max_n", &c.bs_max_n},
      {"shift_mon_max_n", &c.shift_mon_max_n},
      {"approx_max_n", &c.approx_max_n},
      {"witness_general_max_n", &c.witness_general_max_n},
      {"witness_symmetric_max_n", &c.witness_symmetric_max_n},
      {"exact_cc_max_side", &c.exact_cc_max_side},
      {"specnorm_max_side", &c.specnorm_max_side},
      {"structure_max_side", &c.structure_max_side},
      {"hard_instance_max_k", &c.hard_instance_max_k},
  };

  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw input_error("BFCLAB_CAPS entry missing '=': " + item);
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    long long parsed;
    try {
      size_t used = 0;
      parsed = std::stoll(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw input_error("BFCLAB_CAPS value not an integer: " + item);
    }
    if (parsed <= 0) throw input_error("BFCLAB_CAPS value must be positive: " + item);
    if (auto it = keys.find(key); it != keys.end()) {
      *it->second = parsed;
    } else if (auto it2 = int_keys.find(key); it2 != int_keys.end()) {
      *it2->second = int(parsed);
    } else {
      throw input_error("BFCLAB_CAPS unknown key: " + key);
    }
  }
  return c;
}

}  // namespace

Caps& caps() {
  static Caps c = parse_env();
  return c;
}

}  // namespace bfclab
