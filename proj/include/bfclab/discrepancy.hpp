#pragma once

#include <cstdint>

#include "bfclab/approx.hpp"
#include "bfclab/matrix.hpp"
#include "bfclab/truth_table.hpp"

namespace bfclab {

struct Discrepancy {
  double bound = 0.0;     // max(0, log4[(corr - 2 eps) / (3 |Psi| sqrt(XY))])
  bool vacuous = false;   // correlation <= 2 eps, or the ratio is <= 1
  Rat correlation;        // <Psi, F>, exact
  double psi_norm = 0.0;  // spectral norm of Psi (floating point)
};

// Psi must have L1 norm exactly 1 (rational) and F entries +-1
Discrepancy discrepancy_bound(const RatMat& psi, const RatMat& f, const Rat& eps = Rat(1, 10));
// float variant: L1 checked within 1e-9
Discrepancy discrepancy_bound(const RealMat& psi, const RatMat& f, double eps = 0.1);

// the masked-composition instance built from g, its sensitivity witness z
// (first k coordinates zero and each singleton flip of them changes g), and
// the best dual witness on k/4 variables
struct HardInstance {
  int k = 0;
  int d_star = 0;          // zeroing degree of the witness used
  DualWitness witness;
  RatMat psi_mat;          // (k/2, k/4, 2^{-3k/4} psi)-pattern matrix, L1 = 1
  RatMat m_mat;            // sign matrix, columns aligned with psi_mat
  MatrixLabels psi_labels;
  MatrixLabels m_labels;
  Rat correlation;         // <Psi, M>, exact, > 1/3
};

HardInstance build_hard_instance(const TruthTable& g, int k, uint32_t z);

}  // namespace bfclab
