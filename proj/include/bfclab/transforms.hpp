#pragma once

#include <cstdint>
#include <vector>

#include "bfclab/rational.hpp"
#include "bfclab/truth_table.hpp"

namespace bfclab {

// Fourier coefficients over the character basis chi_S(x) = (-1)^{sum_{i in S} x_i},
// indexed by the subset bitmask S
struct Spectrum {
  int n = 1;
  std::vector<Rat> coeffs;

  const Rat& coeff(uint32_t s) const { return coeffs[s]; }
  int support_order() const;        // max |S| with nonzero coefficient
  Rat max_abs_coeff() const;
  Rat squared_mass() const;         // sum of squared coefficients
};

// multilinear expansion over the {0,1} monomial basis, alpha_S per subset mask
struct MultilinearPoly {
  int n = 1;
  std::vector<Rat> terms;

  int degree() const;               // max |S| with alpha_S != 0 (0 when all zero)
  long long monomial_count() const;
};

Spectrum fourier(const RealTable& f);
RealTable inverse_fourier(const Spectrum& s);

MultilinearPoly anf(const RealTable& f);
RealTable evaluate(const MultilinearPoly& p);

Spectrum fourier(const TruthTable& f);
MultilinearPoly anf(const TruthTable& f);

// integer fast path for +-1 tables; alpha_S values fit in 64 bits for n <= 20
std::vector<int64_t> anf_int(const TruthTable& f);
long long monomial_count(const TruthTable& f);
int degree(const TruthTable& f);

// level averages and the unique interpolating polynomial through them
struct Symmetrization {
  std::vector<Rat> profile;  // size n+1, profile[t] = average over |x| = t
  std::vector<Rat> poly;     // monomial coefficients, poly[j] multiplies t^j
  int degree = 0;
};

Symmetrization symmetrize(const RealTable& phi);

}  // namespace bfclab
