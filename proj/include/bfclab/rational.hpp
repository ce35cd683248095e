#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace bfclab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// canonical "p" / "p/q" form, q > 0
std::string rat_str(const Rat& r);

// accepts "p" or "p/q", optional leading minus; throws input_error on junk
Rat parse_rat(const std::string& s);

double rat_double(const Rat& r);

// 12 significant digits, the precision every float in a report carries
std::string float_str(double v);

// binomial coefficient, exact
Int binom(int n, int k);

}  // namespace bfclab
