#include "bfclab/pattern.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"
#include "bfclab/transforms.hpp"

namespace bfclab {

namespace {

void check_spec(int N, int n) {
  if (n < 1 || N < 1) throw input_error("pattern dimensions must be positive");
  if (N % n != 0) throw input_error("block count must divide the ambient length");
  long long count = 1;
  long long b = N / n;
  for (int i = 0; i < n; ++i) {
    count *= b;
    if (count > caps().enum_v_max)
      throw cap_error("pattern cap enum_v_max=" + std::to_string(caps().enum_v_max) +
                      " exceeded by (N/n)^n");
  }
}

std::string bit_string(uint32_t x, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if ((x >> i) & 1) s[i] = '1';
  return s;
}

}  // namespace

std::vector<std::vector<int>> enumerate_V(int N, int n) {
  check_spec(N, n);
  int b = N / n;
  long long count = 1;
  for (int i = 0; i < n; ++i) count *= b;

  std::vector<std::vector<int>> out;
  out.reserve(count);
  // lexicographic in the choice tuple: the last block's pick varies fastest
  std::vector<int> pick(n, 0);
  for (long long idx = 0; idx < count; ++idx) {
    std::vector<int> v(n);
    for (int j = 0; j < n; ++j) v[j] = j * b + pick[j] + 1;
    out.push_back(std::move(v));
    for (int j = n - 1; j >= 0; --j) {
      if (++pick[j] < b) break;
      pick[j] = 0;
    }
  }
  return out;
}

RatMat pattern_matrix(const PatternSpec& spec, MatrixLabels* labels) {
  check_spec(spec.N, spec.n);
  if (spec.phi.n != spec.n)
    throw input_error("pattern function arity must equal the block count");
  auto vs = enumerate_V(spec.N, spec.n);
  long long rows = 1LL << spec.N;
  long long cols = static_cast<long long>(vs.size()) << spec.n;
  if (rows * cols > caps().pattern_max_entries)
    throw cap_error("pattern cap pattern_max_entries=" +
                    std::to_string(caps().pattern_max_entries) + " exceeded by " +
                    std::to_string(rows) + "x" + std::to_string(cols));

  RatMat m{int(rows), int(cols)};
  uint32_t wcount = uint32_t(1) << spec.n;
  for (size_t vi = 0; vi < vs.size(); ++vi) {
    const std::vector<int>& v = vs[vi];
    for (uint32_t w = 0; w < wcount; ++w) {
      int col = int(vi * wcount + w);
      for (uint32_t x = 0; x < uint32_t(rows); ++x) {
        uint32_t u = w;
        for (int j = 0; j < spec.n; ++j) u ^= ((x >> (v[j] - 1)) & 1) << j;
        m.at(int(x), col) = spec.phi.values[u];
      }
    }
  }

  if (labels) {
    labels->rows.clear();
    labels->cols.clear();
    for (uint32_t x = 0; x < uint32_t(rows); ++x)
      labels->rows.push_back("x=" + bit_string(x, spec.N));
    for (const std::vector<int>& v : vs) {
      std::string vtag = "V=";
      for (size_t j = 0; j < v.size(); ++j) {
        if (j) vtag += ',';
        vtag += std::to_string(v[j]);
      }
      for (uint32_t w = 0; w < wcount; ++w)
        labels->cols.push_back(vtag + ";w=" + bit_string(w, spec.n));
    }
  }
  return m;
}

double pattern_spectral_norm(const PatternSpec& spec) {
  check_spec(spec.N, spec.n);
  if (spec.phi.n != spec.n)
    throw input_error("pattern function arity must equal the block count");
  Spectrum s = fourier(spec.phi);
  double ratio = double(spec.n) / double(spec.N);
  double best = 0.0;
  for (uint32_t mask = 0; mask < s.coeffs.size(); ++mask) {
    double c = std::fabs(rat_double(s.coeffs[mask]));
    best = std::max(best, c * std::pow(ratio, std::popcount(mask) / 2.0));
  }
  double lead = std::sqrt(std::ldexp(1.0, spec.N + spec.n) *
                          std::pow(double(spec.N) / spec.n, spec.n));
  return lead * best;
}

}  // namespace bfclab
