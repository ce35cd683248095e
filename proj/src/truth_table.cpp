#include "bfclab/truth_table.hpp"

#include <bit>
#include <sstream>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"

namespace bfclab {

namespace {

int check_arity(int n) {
  if (n < 1) throw input_error("arity must be at least 1");
  if (n > caps().table_max_n)
    throw cap_error("arity " + std::to_string(n) + " exceeds table cap " +
                    std::to_string(caps().table_max_n));
  return n;
}

size_t word_count(int n) { return n <= 6 ? 1 : (size_t(1) << (n - 6)); }

}  // namespace

TruthTable::TruthTable(int arity) : n(check_arity(arity)), bits(word_count(arity), 0) {}

bool TruthTable::constant() const {
  uint32_t m = size();
  bool first = bit(0);
  for (uint32_t x = 1; x < m; ++x)
    if (bit(x) != first) return false;
  return true;
}

uint64_t TruthTable::word() const {
  if (n > 6) throw input_error("word() requires arity at most 6");
  uint64_t mask = n == 6 ? ~uint64_t(0) : (uint64_t(1) << size()) - 1;
  return bits[0] & mask;
}

TruthTable table_from_word(int n, uint64_t word) {
  TruthTable f(n);
  if (n > 6) throw input_error("table_from_word requires arity at most 6");
  uint64_t mask = n == 6 ? ~uint64_t(0) : (uint64_t(1) << f.size()) - 1;
  if ((word & ~mask) != 0) throw input_error("table word has bits beyond 2^n");
  f.bits[0] = word & mask;
  return f;
}

RealTable::RealTable(int arity, Rat fill)
    : n(check_arity(arity)), values(size_t(1) << arity, fill) {}

RealTable to_real(const TruthTable& f) {
  RealTable r(f.n);
  for (uint32_t x = 0; x < f.size(); ++x) r.values[x] = f.value(x);
  return r;
}

std::string table_hex(const TruthTable& f) {
  uint32_t digits = (f.size() + 3) / 4;
  std::string out;
  out.reserve(digits);
  for (uint32_t d = 0; d < digits; ++d) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) {
      uint32_t x = 4 * d + b;
      if (x < f.size() && f.bit(x)) v |= 1u << b;
    }
    out += "0123456789abcdef"[v];
  }
  return out;
}

TruthTable table_from_hex(int n, const std::string& hex) {
  TruthTable f(n);
  uint32_t digits = (f.size() + 3) / 4;
  if (hex.size() != digits)
    throw input_error("expected " + std::to_string(digits) + " hex digits for n=" +
                      std::to_string(n) + ", got " + std::to_string(hex.size()));
  for (uint32_t d = 0; d < digits; ++d) {
    char c = hex[d];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = unsigned(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = unsigned(c - 'a') + 10;
    else if (c >= 'A' && c <= 'F')
      v = unsigned(c - 'A') + 10;
    else
      throw input_error(std::string("invalid hex digit '") + c + "'");
    for (unsigned b = 0; b < 4; ++b) {
      uint32_t x = 4 * d + b;
      if (x < f.size()) {
        f.set_bit(x, (v >> b) & 1);
      } else if ((v >> b) & 1) {
        throw input_error("hex digit sets a bit beyond 2^n");
      }
    }
  }
  return f;
}

std::string format_table(const TruthTable& f) {
  return "n=" + std::to_string(f.n) + " hex=" + table_hex(f);
}

TruthTable parse_table(const std::string& line) {
  std::istringstream ss(line);
  std::string tok;
  int n = -1;
  std::string hex;
  bool have_hex = false;
  while (ss >> tok) {
    if (tok.rfind("n=", 0) == 0) {
      try {
        size_t used = 0;
        n = std::stoi(tok.substr(2), &used);
        if (used != tok.size() - 2) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw input_error("bad arity in table line: " + tok);
      }
    } else if (tok.rfind("hex=", 0) == 0) {
      hex = tok.substr(4);
      have_hex = true;
    } else {
      throw input_error("unexpected token in table line: " + tok);
    }
  }
  if (n < 0 || !have_hex) throw input_error("table line needs n= and hex= fields");
  return table_from_hex(n, hex);
}

TruthTable builtin(const std::string& name, int n) {
  TruthTable f(n);
  uint32_t m = f.size();
  if (name == "AND") {
    f.set_bit(m - 1, true);
  } else if (name == "OR") {
    for (uint32_t x = 1; x < m; ++x) f.set_bit(x, true);
  } else if (name == "XOR") {
    for (uint32_t x = 0; x < m; ++x) f.set_bit(x, std::popcount(x) & 1);
  } else if (name == "MAJ") {
    for (uint32_t x = 0; x < m; ++x) f.set_bit(x, 2 * std::popcount(x) > n);
  } else if (name == "EQ") {
    if (n % 2 != 0) throw input_error("EQ needs an even arity");
    int h = n / 2;
    for (uint32_t x = 0; x < m; ++x)
      f.set_bit(x, (x & ((uint32_t(1) << h) - 1)) == (x >> h));
  } else {
    throw input_error("unknown builtin '" + name + "' (AND, OR, XOR, MAJ, EQ)");
  }
  return f;
}

TruthTable shift(const TruthTable& f, uint32_t z) {
  if (z >= f.size()) throw input_error("shift point outside the cube");
  TruthTable g(f.n);
  for (uint32_t x = 0; x < f.size(); ++x) g.set_bit(x, f.bit(x ^ z));
  return g;
}

Substitution identity_substitution(int n) {
  Substitution s;
  s.m = n;
  s.slots.resize(n);
  for (int i = 0; i < n; ++i) s.slots[i].var = i + 1;
  return s;
}

TruthTable substitute(const TruthTable& f, const Substitution& sigma) {
  if (int(sigma.slots.size()) != f.n)
    throw input_error("substitution must assign every input of f");
  if (sigma.m < 1) throw input_error("substitution target arity must be at least 1");
  for (const Symbol& s : sigma.slots) {
    if (s.var < 0 || s.var > sigma.m)
      throw input_error("substitution variable index out of range");
    if (s.var == 0 && s.constant != 0 && s.constant != 1)
      throw input_error("substitution constants must be 0 or 1");
  }
  TruthTable g(sigma.m);
  for (uint32_t y = 0; y < g.size(); ++y) {
    uint32_t x = 0;
    for (int i = 0; i < f.n; ++i) {
      const Symbol& s = sigma.slots[i];
      int b = s.var > 0 ? int((y >> (s.var - 1)) & 1) : s.constant;
      x |= uint32_t(b) << i;
    }
    g.set_bit(y, f.bit(x));
  }
  return g;
}

}  // namespace bfclab
