#include "bfclab/rational.hpp"

#include <cstdio>
#include <cstdlib>

#include "bfclab/errors.hpp"

namespace bfclab {

std::string rat_str(const Rat& r) {
  Int num = numerator(r);
  Int den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat parse_rat(const std::string& s) {
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) throw input_error("not a rational: '" + s + "'");
      return Rat(Int(s));
    }
    std::string p = s.substr(0, slash);
    std::string q = s.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) throw input_error("not a rational: '" + s + "'");
    Int den(q);
    if (den == 0) throw input_error("zero denominator: '" + s + "'");
    return Rat(Int(p), den);
  } catch (const input_error&) {
    throw;
  } catch (const std::exception&) {
    throw input_error("not a rational: '" + s + "'");
  }
}

double rat_double(const Rat& r) { return r.convert_to<double>(); }

std::string float_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace bfclab
