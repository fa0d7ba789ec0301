#pragma once

// Shared helpers for randomized checks: complex Gaussian vectors and
// amplitude-preserving recombinations built by Gram-Schmidt.

#include <complex>
#include <random>
#include <vector>

namespace becgraph::testutil {

inline std::vector<std::complex<double>> random_complex_unit(
    std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::complex<double>> v(n);
  double norm2 = 0.0;
  for (auto& z : v) {
    z = {gauss(rng), gauss(rng)};
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= inv;
  return v;
}

// Haar-like random unitary of size n via Gram-Schmidt on a complex Gaussian
// matrix (rows orthonormalized, re-orthogonalized once for stability).
inline std::vector<std::vector<std::complex<double>>> random_unitary(
    std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<std::complex<double>>> u(
      n, std::vector<std::complex<double>>(n));
  for (auto& row : u)
    for (auto& z : row) z = {gauss(rng), gauss(rng)};
  for (std::size_t k = 0; k < n; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        std::complex<double> overlap = 0.0;
        for (std::size_t m = 0; m < n; ++m)
          overlap += std::conj(u[j][m]) * u[k][m];
        for (std::size_t m = 0; m < n; ++m) u[k][m] -= overlap * u[j][m];
      }
    }
    double norm2 = 0.0;
    for (const auto& z : u[k]) norm2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : u[k]) z *= inv;
  }
  return u;
}

// W x with W in U(1) x U(n-1): a phase on component `fixed` and a random
// unitary mixing of all other components. Preserves |x_fixed|.
inline std::vector<std::complex<double>> recombine_except(
    std::mt19937_64& rng, const std::vector<std::complex<double>>& x,
    std::size_t fixed) {
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  const std::size_t n = x.size();
  const auto u = random_unitary(rng, n - 1);

  std::vector<std::complex<double>> rest;
  rest.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j)
    if (j != fixed) rest.push_back(x[j]);

  std::vector<std::complex<double>> y(n);
  y[fixed] = std::polar(1.0, angle(rng)) * x[fixed];
  std::size_t out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == fixed) continue;
    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < n - 1; ++m) sum += u[out][m] * rest[m];
    y[j] = sum;
    ++out;
  }
  return y;
}

}  // namespace becgraph::testutil
