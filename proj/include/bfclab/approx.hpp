#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bfclab/rational.hpp"
#include "bfclab/truth_table.hpp"

namespace bfclab {

struct ApproxDegree {
  int d = 0;
  // errors[j] = exact optimal sup-norm error of a degree-<=j approximant in
  // the character basis, for j = 0..d (the scan stops once the target is met)
  std::vector<Rat> errors;
};

ApproxDegree approx_degree(const TruthTable& f, const Rat& eps = Rat(1, 3));

// exact optimum of max_x |p(x) - f(x)| over polynomials of degree <= d
Rat best_approx_error(const TruthTable& f, int d);

// max of sum psi*f over psi with unit L1 norm and hat{psi}(S) = 0 for |S| <= d;
// equals best_approx_error(f, d) by LP duality, solved through an independent
// formulation for cross-checking
Rat single_function_dual(const TruthTable& f, int d);

// psi with L1 exactly 1, Fourier coefficients exactly zero below d0, and
// sum psi*f > 1/3 simultaneously for every f with f(0) = +1 and all f(e_i) = -1
struct DualWitness {
  int n = 0;
  int d0 = 0;
  bool symmetric = false;
  RealTable psi;            // materialized when n <= 20
  std::vector<Rat> levels;  // symmetric mode: psi value per Hamming weight
  Rat margin;               // guaranteed minimum of sum psi*f over the family
  Rat l1;
};

// nullopt = no witness at this zeroing degree (a normal outcome, not an error)
std::optional<DualWitness> dual_witness(int n, int d, bool symmetric = false);

// largest d for which dual_witness(n, d) succeeds, 0 if none
int witness_max_degree(int n, bool symmetric = false);

struct WitnessCheck {
  bool zeroing_ok = false;
  bool l1_ok = false;
  bool margins_ok = false;
  std::vector<Rat> margins;  // one per sampled family member
  std::string detail;        // which condition fails and by how much
  bool ok = false;
};

// recomputes the three witness conditions from scratch in exact arithmetic;
// every sample member must lie in the family (f(0) = +1, all f(e_i) = -1)
WitnessCheck verify_witness(const DualWitness& w, const std::vector<TruthTable>& sample);

// members of the family on n variables; values at |x| >= 2 drawn from the seed
TruthTable family_member(int n, uint64_t seed);

std::string witness_json(const DualWitness& w);
DualWitness witness_from_json(const std::string& text);

}  // namespace bfclab
