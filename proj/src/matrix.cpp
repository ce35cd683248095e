#include "bfclab/matrix.hpp"

#include <sstream>

#include "bfclab/errors.hpp"
#include "json.hpp"

namespace bfclab {

RealMat to_real(const RatMat& m) {
  RealMat out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = rat_double(m.a[i]);
  return out;
}

std::string write_matrix(const RatMat& m) {
  std::string out = std::to_string(m.rows) + " " + std::to_string(m.cols) + " mode=rational\n";
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (c) out += ' ';
      out += rat_str(m.at(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string write_matrix(const RealMat& m) {
  std::string out = std::to_string(m.rows) + " " + std::to_string(m.cols) + " mode=float\n";
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (c) out += ' ';
      out += float_str(m.at(r, c));
    }
    out += '\n';
  }
  return out;
}

ParsedMatrix read_matrix(const std::string& text) {
  std::istringstream ss(text);
  long long rows = -1, cols = -1;
  std::string mode_tok;
  if (!(ss >> rows >> cols >> mode_tok))
    throw input_error("matrix header must be '<rows> <cols> mode=rational|float'");
  if (rows <= 0 || cols <= 0) throw input_error("matrix dimensions must be positive");
  if (rows * cols > 100000000) throw input_error("matrix too large to parse");

  ParsedMatrix out;
  if (mode_tok == "mode=rational")
    out.rational = true;
  else if (mode_tok == "mode=float")
    out.rational = false;
  else
    throw input_error("unknown matrix mode token: " + mode_tok);

  if (out.rational) {
    out.rmat = RatMat(int(rows), int(cols));
    for (Rat& v : out.rmat.a) {
      std::string tok;
      if (!(ss >> tok)) throw input_error("matrix body ended early");
      v = parse_rat(tok);
    }
  } else {
    out.fmat = RealMat(int(rows), int(cols));
    for (double& v : out.fmat.a) {
      std::string tok;
      if (!(ss >> tok)) throw input_error("matrix body ended early");
      try {
        size_t used = 0;
        v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw input_error("bad float entry: " + tok);
      }
    }
  }
  std::string extra;
  if (ss >> extra) throw input_error("trailing content after matrix body: " + extra);
  return out;
}

std::string labels_json(const MatrixLabels& l) {
  nlohmann::ordered_json j;
  j["rows"] = l.rows;
  j["cols"] = l.cols;
  return j.dump();
}

long long rational_rank(const RatMat& m) {
  // clear denominators row by row (rank-preserving), then fraction-free
  // elimination over the integers
  std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols));
  for (int r = 0; r < m.rows; ++r) {
    Int lcm = 1;
    for (int c = 0; c < m.cols; ++c) {
      Int den = denominator(m.at(r, c));
      lcm = boost::multiprecision::lcm(lcm, den);
    }
    for (int c = 0; c < m.cols; ++c) {
      const Rat& v = m.at(r, c);
      a[r][c] = numerator(v) * (lcm / denominator(v));
    }
  }

  long long rank = 0;
  Int prev = 1;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int r = int(rank); r < m.rows; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int r = int(rank) + 1; r < m.rows; ++r) {
      for (int c = col + 1; c < m.cols; ++c)
        a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace bfclab
