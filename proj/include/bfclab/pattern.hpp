#pragma once

#include <vector>

#include "bfclab/matrix.hpp"
#include "bfclab/truth_table.hpp"

namespace bfclab {

// (N, n, phi)-pattern matrix specification: N split into n contiguous blocks
// of size N/n, phi a real function on n variables
struct PatternSpec {
  int N = 0;
  int n = 0;
  RealTable phi;
};

// all sets with exactly one element per block, as sorted 1-based index lists,
// in lexicographic order of the choice tuple
std::vector<std::vector<int>> enumerate_V(int N, int n);

// rows: x in {0,1}^N by index; columns: (V, w) with V outer and w inner.
// Entry (x, (V,w)) = phi(x restricted to V, XOR w).
RatMat pattern_matrix(const PatternSpec& spec, MatrixLabels* labels = nullptr);

// closed form sqrt(2^{N+n} (N/n)^n) * max_S |phi_hat(S)| (n/N)^{|S|/2},
// evaluated in floating point from the exact spectrum; no matrix materialized
double pattern_spectral_norm(const PatternSpec& spec);

}  // namespace bfclab
