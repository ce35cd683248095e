#include "bfclab/specnorm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"

namespace bfclab {

namespace {

// Gram matrix on the smaller side, so the eigenproblem is as small as possible
std::vector<std::vector<double>> gram(const RealMat& m) {
  bool wide = m.cols < m.rows;
  int side = wide ? m.cols : m.rows;
  int other = wide ? m.rows : m.cols;
  if (side > caps().specnorm_max_side)
    throw cap_error("spectral norm cap specnorm_max_side=" +
                    std::to_string(caps().specnorm_max_side) + " exceeded by side " +
                    std::to_string(side));
  std::vector<std::vector<double>> g(side, std::vector<double>(side, 0.0));
  for (int i = 0; i < side; ++i)
    for (int j = i; j < side; ++j) {
      double s = 0.0;
      for (int k = 0; k < other; ++k) {
        double a = wide ? m.at(k, i) : m.at(i, k);
        double b = wide ? m.at(k, j) : m.at(j, k);
        s += a * b;
      }
      g[i][j] = g[j][i] = s;
    }
  return g;
}

double off_diag_sq(const std::vector<std::vector<double>>& g) {
  double s = 0.0;
  int n = int(g.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += 2.0 * g[i][j] * g[i][j];
  return s;
}

double frob_sq(const std::vector<std::vector<double>>& g) {
  double s = 0.0;
  for (const auto& row : g)
    for (double v : row) s += v * v;
  return s;
}

}  // namespace

double spectral_norm_jacobi(const RealMat& m) {
  auto g = gram(m);
  int n = int(g.size());
  if (n == 1) return std::sqrt(std::max(0.0, g[0][0]));

  double target = frob_sq(g) * 1e-28;
  int sweeps = 0;
  const int max_sweeps = 60;
  while (off_diag_sq(g) > target) {
    if (++sweeps > max_sweeps)
      throw std::runtime_error("jacobi eigensolve did not converge in " +
                               std::to_string(max_sweeps) + " sweeps");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (g[p][q] == 0.0) continue;
        double theta = (g[q][q] - g[p][p]) / (2.0 * g[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double gkp = g[k][p], gkq = g[k][q];
          g[k][p] = c * gkp - s * gkq;
          g[k][q] = s * gkp + c * gkq;
        }
        for (int k = 0; k < n; ++k) {
          double gpk = g[p][k], gqk = g[q][k];
          g[p][k] = c * gpk - s * gqk;
          g[q][k] = s * gpk + c * gqk;
        }
      }
    }
  }
  double lam = 0.0;
  for (int i = 0; i < n; ++i) lam = std::max(lam, g[i][i]);
  return std::sqrt(lam);
}

double spectral_norm_power(const RealMat& m) {
  auto g = gram(m);
  int n = int(g.size());
  std::vector<double> v(n), w(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + double(i) / double(n + 1);

  double lam = 0.0;
  const long long max_iter = 200000;
  for (long long iter = 1; iter <= max_iter; ++iter) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += g[i][j] * v[j];
      w[i] = s;
      norm += s * s;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    double rayleigh = 0.0;
    for (int i = 0; i < n; ++i) rayleigh += v[i] * w[i];
    double vv = 0.0;
    for (int i = 0; i < n; ++i) vv += v[i] * v[i];
    double next = rayleigh / vv;
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (iter > 1 && std::fabs(next - lam) <= 1e-12 * std::max(1.0, std::fabs(next)))
      return std::sqrt(std::max(0.0, next));
    lam = next;
  }
  throw std::runtime_error("power iteration did not converge in " +
                           std::to_string(max_iter) + " iterations");
}

double spectral_norm_oracle(const RealMat& m) { return spectral_norm_jacobi(m); }

double spectral_norm_oracle(const RatMat& m) { return spectral_norm_jacobi(to_real(m)); }

}  // namespace bfclab
