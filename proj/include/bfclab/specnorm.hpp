#pragma once

#include "bfclab/matrix.hpp"

namespace bfclab {

// largest singular value via a cyclic Jacobi eigensolve of the smaller Gram
// matrix; relative accuracy 1e-8 documented, non-convergence throws with the
// sweep count
double spectral_norm_jacobi(const RealMat& m);

// second method: power iteration on the Gram matrix, tolerance 1e-12;
// non-convergence throws with the iteration count
double spectral_norm_power(const RealMat& m);

// the verification oracle used by the rest of the library (Jacobi)
double spectral_norm_oracle(const RealMat& m);
double spectral_norm_oracle(const RatMat& m);

}  // namespace bfclab
