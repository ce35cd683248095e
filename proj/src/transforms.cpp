#include "bfclab/transforms.hpp"

#include <bit>

#include "bfclab/errors.hpp"

namespace bfclab {

int Spectrum::support_order() const {
  int best = 0;
  for (uint32_t s = 0; s < coeffs.size(); ++s)
    if (coeffs[s] != 0) best = std::max(best, std::popcount(s));
  return best;
}

Rat Spectrum::max_abs_coeff() const {
  Rat best = 0;
  for (const Rat& c : coeffs) best = std::max(best, Rat(abs(c)));
  return best;
}

Rat Spectrum::squared_mass() const {
  Rat total = 0;
  for (const Rat& c : coeffs) total += c * c;
  return total;
}

int MultilinearPoly::degree() const {
  int best = 0;
  for (uint32_t s = 0; s < terms.size(); ++s)
    if (terms[s] != 0) best = std::max(best, std::popcount(s));
  return best;
}

long long MultilinearPoly::monomial_count() const {
  long long count = 0;
  for (const Rat& t : terms)
    if (t != 0) ++count;
  return count;
}

Spectrum fourier(const RealTable& f) {
  Spectrum s;
  s.n = f.n;
  s.coeffs = f.values;
  size_t m = s.coeffs.size();
  for (size_t bit = 1; bit < m; bit <<= 1) {
    for (size_t x = 0; x < m; ++x) {
      if (x & bit) continue;
      Rat a = s.coeffs[x];
      Rat b = s.coeffs[x | bit];
      s.coeffs[x] = a + b;
      s.coeffs[x | bit] = a - b;
    }
  }
  Rat scale(1, Int(1) << f.n);
  for (Rat& c : s.coeffs) c *= scale;
  return s;
}

RealTable inverse_fourier(const Spectrum& s) {
  RealTable f(s.n);
  f.values = s.coeffs;
  size_t m = f.values.size();
  for (size_t bit = 1; bit < m; bit <<= 1) {
    for (size_t x = 0; x < m; ++x) {
      if (x & bit) continue;
      Rat a = f.values[x];
      Rat b = f.values[x | bit];
      f.values[x] = a + b;
      f.values[x | bit] = a - b;
    }
  }
  return f;
}

MultilinearPoly anf(const RealTable& f) {
  MultilinearPoly p;
  p.n = f.n;
  p.terms = f.values;
  size_t m = p.terms.size();
  for (size_t bit = 1; bit < m; bit <<= 1)
    for (size_t x = 0; x < m; ++x)
      if (x & bit) p.terms[x] -= p.terms[x ^ bit];
  return p;
}

RealTable evaluate(const MultilinearPoly& p) {
  RealTable f(p.n);
  f.values = p.terms;
  size_t m = f.values.size();
  for (size_t bit = 1; bit < m; bit <<= 1)
    for (size_t x = 0; x < m; ++x)
      if (x & bit) f.values[x] += f.values[x ^ bit];
  return f;
}

Spectrum fourier(const TruthTable& f) { return fourier(to_real(f)); }

MultilinearPoly anf(const TruthTable& f) { return anf(to_real(f)); }

std::vector<int64_t> anf_int(const TruthTable& f) {
  size_t m = size_t(1) << f.n;
  std::vector<int64_t> a(m);
  for (uint32_t x = 0; x < m; ++x) a[x] = f.value(x);
  for (size_t bit = 1; bit < m; bit <<= 1)
    for (size_t x = 0; x < m; ++x)
      if (x & bit) a[x] -= a[x ^ bit];
  return a;
}

long long monomial_count(const TruthTable& f) {
  auto a = anf_int(f);
  long long count = 0;
  for (int64_t v : a)
    if (v != 0) ++count;
  return count;
}

int degree(const TruthTable& f) {
  auto a = anf_int(f);
  int best = 0;
  for (uint32_t s = 0; s < a.size(); ++s)
    if (a[s] != 0) best = std::max(best, std::popcount(s));
  return best;
}

Symmetrization symmetrize(const RealTable& phi) {
  int n = phi.n;
  Symmetrization sym;
  sym.profile.assign(n + 1, Rat(0));
  for (uint32_t x = 0; x < phi.size(); ++x)
    sym.profile[std::popcount(x)] += phi.values[x];
  for (int t = 0; t <= n; ++t) sym.profile[t] /= Rat(binom(n, t));

  // Newton interpolation through (t, profile[t]) for t = 0..n, expanded to
  // monomial coefficients
  std::vector<Rat> dd = sym.profile;
  for (int level = 1; level <= n; ++level)
    for (int i = n; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / Rat(level);

  sym.poly.assign(n + 1, Rat(0));
  std::vector<Rat> basis{Rat(1)};  // product (t - 0)(t - 1)...(t - i + 1)
  for (int i = 0; i <= n; ++i) {
    for (size_t j = 0; j < basis.size(); ++j) sym.poly[j] += dd[i] * basis[j];
    if (i < n) {
      basis.push_back(Rat(0));
      for (size_t j = basis.size() - 1; j > 0; --j)
        basis[j] = basis[j - 1] - Rat(i) * basis[j];
      basis[0] *= Rat(-i);
    }
  }
  sym.degree = 0;
  for (int j = n; j >= 0; --j)
    if (sym.poly[j] != 0) {
      sym.degree = j;
      break;
    }
  return sym;
}

}  // namespace bfclab
