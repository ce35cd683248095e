#include "bfclab/discrepancy.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"
#include "bfclab/pattern.hpp"
#include "bfclab/specnorm.hpp"

namespace bfclab {

namespace {

void check_signs(const RatMat& f) {
  for (const Rat& v : f.a)
    if (v != 1 && v != -1) throw input_error("sign matrix entries must be +1 or -1");
}

Discrepancy finish(Rat corr, const Rat& eps, double psi_norm, long long rows, long long cols) {
  Discrepancy out;
  out.correlation = corr;
  out.psi_norm = psi_norm;
  Rat numer = corr - 2 * eps;
  if (numer <= 0) {
    out.vacuous = true;
    return out;
  }
  double denom = 3.0 * psi_norm * std::sqrt(double(rows) * double(cols));
  double ratio = rat_double(numer) / denom;
  if (ratio <= 1.0) {
    out.vacuous = true;
    return out;
  }
  out.bound = std::log(ratio) / std::log(4.0);
  return out;
}

}  // namespace

Discrepancy discrepancy_bound(const RatMat& psi, const RatMat& f, const Rat& eps) {
  if (psi.rows != f.rows || psi.cols != f.cols)
    throw input_error("witness and sign matrices must have equal shape");
  if (eps < 0 || eps >= Rat(1, 2)) throw input_error("error rate must lie in [0, 1/2)");
  check_signs(f);
  Rat l1 = 0;
  for (const Rat& v : psi.a) l1 += abs(v);
  if (l1 != 1) throw input_error("witness matrix must have L1 norm exactly 1, got " + rat_str(l1));

  Rat corr = 0;
  for (size_t i = 0; i < psi.a.size(); ++i) corr += psi.a[i] * f.a[i];
  return finish(corr, eps, spectral_norm_oracle(psi), psi.rows, psi.cols);
}

Discrepancy discrepancy_bound(const RealMat& psi, const RatMat& f, double eps) {
  if (psi.rows != f.rows || psi.cols != f.cols)
    throw input_error("witness and sign matrices must have equal shape");
  if (eps < 0 || eps >= 0.5) throw input_error("error rate must lie in [0, 1/2)");
  check_signs(f);
  double l1 = 0;
  for (double v : psi.a) l1 += std::fabs(v);
  if (std::fabs(l1 - 1.0) > 1e-9)
    throw input_error("witness matrix must have L1 norm 1 within 1e-9, got " + float_str(l1));

  double corr = 0;
  for (size_t i = 0; i < psi.a.size(); ++i) corr += psi.a[i] * rat_double(f.a[i]);
  return finish(Rat(corr), Rat(eps), spectral_norm_jacobi(psi), psi.rows, psi.cols);
}

HardInstance build_hard_instance(const TruthTable& g, int k, uint32_t z) {
  if (k < 4 || k % 4 != 0)
    throw input_error("the construction needs a positive multiple of 4 coordinates");
  if (k > caps().hard_instance_max_k)
    throw cap_error("hard instance cap hard_instance_max_k=" +
                    std::to_string(caps().hard_instance_max_k) + " exceeded by k=" +
                    std::to_string(k));
  if (g.n < k) throw input_error("the base function needs at least k inputs");
  if (z >= g.size()) throw input_error("base point outside the cube");
  if ((z & ((uint32_t(1) << k) - 1)) != 0)
    throw input_error("base point must be zero on the first k coordinates");
  for (int i = 0; i < k; ++i)
    if (g.value(z ^ (uint32_t(1) << i)) == g.value(z))
      throw input_error("coordinate " + std::to_string(i + 1) +
                        " is not sensitive at the base point");

  HardInstance out;
  out.k = k;
  int half = k / 2, quarter = k / 4;

  for (int d = 1; d <= quarter; ++d) {
    auto w = dual_witness(quarter, d);
    if (!w.has_value()) break;
    out.witness = *w;
    out.d_star = d;
  }
  if (out.d_star == 0) throw std::logic_error("no dual witness at any zeroing degree");

  PatternSpec spec;
  spec.N = half;
  spec.n = quarter;
  spec.phi = RealTable(quarter);
  Rat scale(1, Int(1) << (3 * k / 4));
  for (uint32_t u = 0; u < spec.phi.size(); ++u)
    spec.phi.values[u] = out.witness.psi.values[u] * scale;
  out.psi_mat = pattern_matrix(spec, &out.psi_labels);

  Rat l1 = 0;
  for (const Rat& v : out.psi_mat.a) l1 += abs(v);
  if (l1 != 1) throw std::logic_error("witness matrix L1 came out as " + rat_str(l1));

  auto vs = enumerate_V(half, quarter);
  uint32_t wcount = uint32_t(1) << quarter;
  out.m_mat = RatMat(out.psi_mat.rows, out.psi_mat.cols);
  out.m_labels = out.psi_labels;
  int gz = g.value(z);

  for (size_t vi = 0; vi < vs.size(); ++vi) {
    const std::vector<int>& v = vs[vi];
    // the (v_j, w_j) pair selects one of the four coordinates in group j
    for (uint32_t w = 0; w < wcount; ++w) {
      int col = int(vi * wcount + w);
      std::vector<uint32_t> coord(quarter);
      for (int j = 0; j < quarter; ++j) {
        int c = 4 * j + 2 * (v[j] - 1 - 2 * j) + int((w >> j) & 1) + 1;
        coord[j] = uint32_t(1) << (c - 1);
      }
      std::vector<int> column_fn(wcount);
      for (uint32_t u = 0; u < wcount; ++u) {
        uint32_t mask = 0;
        for (int j = 0; j < quarter; ++j)
          if ((u >> j) & 1) mask |= coord[j];
        column_fn[u] = gz * g.value(z ^ mask);
        if (u == 0 && column_fn[u] != +1)
          throw std::logic_error("column function must be +1 at the origin");
        if (std::popcount(u) == 1 && column_fn[u] != -1)
          throw std::logic_error("column function must be -1 on singletons");
      }
      for (uint32_t x = 0; x < uint32_t(out.m_mat.rows); ++x) {
        uint32_t ux = w;
        for (int j = 0; j < quarter; ++j) ux ^= ((x >> (v[j] - 1)) & 1) << j;
        out.m_mat.at(int(x), col) = column_fn[ux];
      }
    }
  }

  out.correlation = 0;
  for (size_t i = 0; i < out.psi_mat.a.size(); ++i)
    out.correlation += out.psi_mat.a[i] * out.m_mat.a[i];
  if (out.correlation <= Rat(1, 3))
    throw std::logic_error("instance correlation came out as " + rat_str(out.correlation));
  return out;
}

}  // namespace bfclab
