#include "becgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "becgraph/kernels.hpp"

namespace becgraph {

namespace {

double off_diagonal_norm(const std::vector<double>& a, int n) {
  double sum = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      const double v = a[static_cast<std::size_t>(p) * n + q];
      sum += 2.0 * v * v;
    }
  return std::sqrt(sum);
}

// Fix each eigenvector's sign: the largest-magnitude entry (first one on
// ties) must be positive.
void fix_sign(std::span<double> row) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < row.size(); ++j)
    if (std::abs(row[j]) > std::abs(row[best])) best = j;
  if (row[best] < 0.0)
    for (double& v : row) v = -v;
}

}  // namespace

EigenSystem jacobi_eigensystem(std::span<const double> matrix, int dim) {
  if (dim < 1) throw std::invalid_argument("jacobi: dimension must be >= 1");
  const std::size_t n = static_cast<std::size_t>(dim);
  if (matrix.size() != n * n)
    throw std::invalid_argument("jacobi: matrix size does not match dimension");
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      if (matrix[p * n + q] != matrix[q * n + p])
        throw std::invalid_argument("jacobi: matrix is not symmetric");

  std::vector<double> a(matrix.begin(), matrix.end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double frob = 0.0;
  for (const double x : a) frob += x * x;
  const double target = kJacobiTol * (1.0 + std::sqrt(frob));

  const kernels::Ops& k = kernels::active();
  constexpr int kMaxSweeps = 64;
  int sweep = 0;
  while (off_diagonal_norm(a, dim) > target) {
    if (++sweep > kMaxSweeps)
      throw std::runtime_error("jacobi: failed to converge in " +
                               std::to_string(kMaxSweeps) + " sweeps");
    for (int p = 0; p < dim; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        const double apq = a[static_cast<std::size_t>(p) * n + q];
        if (apq == 0.0) continue;
        const double app = a[static_cast<std::size_t>(p) * n + p];
        const double aqq = a[static_cast<std::size_t>(q) * n + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) /
            (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        double* row_p = a.data() + static_cast<std::size_t>(p) * n;
        double* row_q = a.data() + static_cast<std::size_t>(q) * n;
        k.rotate_pair(row_p, row_q, n, c, s);
        // The 2x2 pivot block has exact update formulas.
        row_p[p] = app - t * apq;
        row_q[q] = aqq + t * apq;
        row_p[q] = 0.0;
        row_q[p] = 0.0;
        for (int i = 0; i < dim; ++i) {
          if (i == p || i == q) continue;
          a[static_cast<std::size_t>(i) * n + p] = row_p[i];
          a[static_cast<std::size_t>(i) * n + q] = row_q[i];
        }
        k.rotate_pair(v.data() + static_cast<std::size_t>(p) * n,
                      v.data() + static_cast<std::size_t>(q) * n, n, c, s);
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a[static_cast<std::size_t>(x) * n + x] >
           a[static_cast<std::size_t>(y) * n + y];
  });

  EigenSystem out;
  out.dim = dim;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k2 = 0; k2 < n; ++k2) {
    const std::size_t src = static_cast<std::size_t>(order[k2]);
    out.values[k2] = a[src * n + src];
    std::copy_n(v.begin() + src * n, n, out.vectors.begin() + k2 * n);
    fix_sign(std::span<double>(out.vectors).subspan(k2 * n, n));
  }
  return out;
}

std::vector<std::vector<int>> degeneracy_classes(const EigenSystem& eig,
                                                 double tol) {
  if (tol <= 0.0)
    throw std::invalid_argument("degeneracy tolerance must be positive");
  std::vector<std::vector<int>> classes;
  for (int k = 0; k < eig.dim; ++k) {
    if (k == 0 || std::abs(eig.values[static_cast<std::size_t>(k)] -
                           eig.values[static_cast<std::size_t>(k - 1)]) > tol)
      classes.emplace_back();
    classes.back().push_back(k);
  }
  return classes;
}

SpectralDecomposition eigendecompose(const Graph& g) {
  SpectralDecomposition sd;
  sd.eig = jacobi_eigensystem(g.adjacency(), g.vertex_count());
  sd.degeneracy_classes = degeneracy_classes(sd.eig, kDegeneracyTol);
  return sd;
}

SingleParticleState SingleParticleState::from_real(std::span<const double> v) {
  SingleParticleState s;
  s.amplitudes.reserve(v.size());
  for (const double x : v) s.amplitudes.emplace_back(x, 0.0);
  const double nrm = s.norm();
  if (std::abs(nrm - 1.0) > 1e-12)
    throw std::invalid_argument("single-particle state is not normalized");
  return s;
}

SingleParticleState SingleParticleState::normalized(
    std::vector<std::complex<double>> v) {
  double sum = 0.0;
  for (const auto& z : v) sum += std::norm(z);
  if (sum <= 0.0)
    throw std::invalid_argument("cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(sum);
  for (auto& z : v) z *= inv;
  SingleParticleState s;
  s.amplitudes = std::move(v);
  return s;
}

double SingleParticleState::norm() const {
  double sum = 0.0;
  for (const auto& z : amplitudes) sum += std::norm(z);
  return std::sqrt(sum);
}

SingleParticleState ground_eigenvector(const SpectralDecomposition& sd,
                                       const Graph& g) {
  if (!is_connected(g))
    throw std::invalid_argument(
        "ground eigenvector requires a connected graph (Perron-Frobenius "
        "precondition)");
  const EigenSystem& eig = sd.eig;
  if (eig.dim >= 2 &&
      std::abs(eig.values[0] - eig.values[1]) <= kDegeneracyTol)
    throw std::runtime_error(
        "top adjacency eigenvalue is degenerate on a connected graph; "
        "treating as eigensolver failure");
  auto row = eig.vector(0);
  for (const double x : row)
    if (!(x > 0.0))
      throw std::runtime_error(
          "Perron eigenvector of a connected graph has a non-positive "
          "entry; treating as eigensolver failure");
  return SingleParticleState::from_real(row);
}

std::vector<SingleParticleState> fourier_modes(int l) {
  if (l < 3)
    throw std::invalid_argument("fourier modes need at least 3 vertices");
  std::vector<SingleParticleState> modes;
  modes.reserve(static_cast<std::size_t>(l));
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(l));
  for (int k = 0; k < l; ++k) {
    SingleParticleState s;
    s.amplitudes.reserve(static_cast<std::size_t>(l));
    for (int j = 0; j < l; ++j) {
      const double phase = 2.0 * std::numbers::pi *
                           static_cast<double>(k) * static_cast<double>(j) /
                           static_cast<double>(l);
      s.amplitudes.emplace_back(inv_sqrt * std::cos(phase),
                                inv_sqrt * std::sin(phase));
    }
    modes.push_back(std::move(s));
  }
  return modes;
}

}  // namespace becgraph
