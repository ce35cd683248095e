#pragma once

#include <string>
#include <vector>

#include "bfclab/rational.hpp"

namespace bfclab {

template <class T>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

  T& at(int r, int c) { return a[size_t(r) * cols + c]; }
  const T& at(int r, int c) const { return a[size_t(r) * cols + c]; }

  bool operator==(const Mat& o) const = default;
};

using RatMat = Mat<Rat>;
using RealMat = Mat<double>;
using BitMat = Mat<int>;  // 0/1 entries

RealMat to_real(const RatMat& m);

// row/column index semantics for serialized matrices
struct MatrixLabels {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
};

// dense text format: header "rows cols mode=rational|float", then row-major entries
std::string write_matrix(const RatMat& m);
std::string write_matrix(const RealMat& m);

struct ParsedMatrix {
  bool rational = true;
  RatMat rmat;
  RealMat fmat;
};

ParsedMatrix read_matrix(const std::string& text);

std::string labels_json(const MatrixLabels& l);

// exact rank by fraction-free (Bareiss) elimination on the cleared-denominator matrix
long long rational_rank(const RatMat& m);

}  // namespace bfclab
