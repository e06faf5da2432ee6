#include "mrsdn/erlang.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mrsdn::workload {

double erlang_b(double erlangs, int servers) {
  if (erlangs < 0.0 || servers < 0) {
    throw std::invalid_argument("erlang_b: load >= 0 and servers >= 0 required");
  }
  double b = 1.0;
  for (int c = 1; c <= servers; ++c) {
    b = erlangs * b / (c + erlangs * b);
  }
  return b;
}

double ctmc_blocking(double lambda_per_s, double mean_hold_s, int servers) {
  if (lambda_per_s < 0.0 || !(mean_hold_s > 0.0) || servers < 0 || servers > 64) {
    throw std::invalid_argument("ctmc_blocking: bad parameters");
  }
  if (lambda_per_s == 0.0) return servers == 0 ? 1.0 : 0.0;

  const int n = servers + 1;
  const double mu = 1.0 / mean_hold_s;

  // Solve pi * Q = 0 with sum(pi) = 1. Build Q^T, replace the last
  // equation by the normalization row, and eliminate.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (int col = 0; col < n; ++col) {  // column of Q = state `col`
    const double up = col < servers ? lambda_per_s : 0.0;
    const double down = col * mu;
    a[col][col] -= up + down;                 // Q[col][col]
    if (col < servers) a[col + 1][col] = up;  // Q[col][col+1] transposed
    if (col > 0) a[col - 1][col] = down;      // Q[col][col-1] transposed
  }
  for (int col = 0; col < n; ++col) a[n - 1][col] = 1.0;
  a[n - 1][n] = 1.0;

  // Gaussian elimination with partial pivoting.
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int r = k + 1; r < n; ++r) {
      if (std::abs(a[r][k]) > std::abs(a[pivot][k])) pivot = r;
    }
    std::swap(a[k], a[pivot]);
    if (a[k][k] == 0.0) throw std::runtime_error("ctmc_blocking: singular system");
    for (int r = k + 1; r < n; ++r) {
      const double f = a[r][k] / a[k][k];
      for (int c = k; c <= n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  std::vector<double> pi(n, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    double rhs = a[k][n];
    for (int c = k + 1; c < n; ++c) rhs -= a[k][c] * pi[c];
    pi[k] = rhs / a[k][k];
  }
  return pi[servers];
}

}  // namespace mrsdn::workload
