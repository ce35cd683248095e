#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfclab/rational.hpp"

namespace bfclab {

// A Boolean function f: {0,1}^n -> {-1,+1}, n <= 20, as a packed bit vector.
// Point x is indexed by the integer whose binary expansion is x with x_1 as
// the least significant bit; a set bit stores output -1 ("true"), a clear
// bit +1. This index convention is shared by every module.
struct TruthTable {
  int n = 1;
  std::vector<uint64_t> bits;

  TruthTable() : bits(1, 0) {}
  explicit TruthTable(int arity);

  uint32_t size() const { return uint32_t(1) << n; }

  bool bit(uint32_t x) const { return (bits[x >> 6] >> (x & 63)) & 1; }

  void set_bit(uint32_t x, bool v) {
    uint64_t mask = uint64_t(1) << (x & 63);
    if (v)
      bits[x >> 6] |= mask;
    else
      bits[x >> 6] &= ~mask;
  }

  // +1 or -1
  int value(uint32_t x) const { return bit(x) ? -1 : +1; }

  bool constant() const;

  bool operator==(const TruthTable& o) const = default;

  // table as an integer, defined for n <= 6: bit i = bit(i)
  uint64_t word() const;
};

TruthTable table_from_word(int n, uint64_t word);

// real-valued function on the hypercube, same index convention
struct RealTable {
  int n = 1;
  std::vector<Rat> values;

  RealTable() : values(2) {}
  RealTable(int arity, Rat fill = Rat(0));

  uint32_t size() const { return uint32_t(1) << n; }
};

RealTable to_real(const TruthTable& f);

// text format: "n=<arity> hex=<ceil(2^n/4) digits>", least significant digit first
TruthTable parse_table(const std::string& line);
std::string format_table(const TruthTable& f);
std::string table_hex(const TruthTable& f);
TruthTable table_from_hex(int n, const std::string& hex);

// named builtins: AND, OR, XOR, MAJ, EQ
TruthTable builtin(const std::string& name, int n);

// f_z(x) = f(x ^ z)
TruthTable shift(const TruthTable& f, uint32_t z);

// one entry per input position of f: a variable of the new function or a constant
struct Symbol {
  int var = 0;       // 1-based variable index when > 0
  int constant = 0;  // used when var == 0
};

struct Substitution {
  int m = 0;  // arity of the result
  std::vector<Symbol> slots;
};

Substitution identity_substitution(int n);

TruthTable substitute(const TruthTable& f, const Substitution& sigma);

}  // namespace bfclab
