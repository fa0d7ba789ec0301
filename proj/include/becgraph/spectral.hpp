#pragma once

#include <complex>
#include <span>
#include <vector>

#include "becgraph/graph.hpp"

namespace becgraph {

// Relative off-diagonal target of the Jacobi sweeps.
inline constexpr double kJacobiTol = 1e-12;
// Default width for treating two eigenvalues as equal.
inline constexpr double kDegeneracyTol = 1e-9;

// Eigenvalues in descending order with orthonormal eigenvectors; row k of
// `vectors` belongs to values[k]. Each row's sign is fixed so its
// largest-magnitude entry is positive (lowest index wins ties), making
// results reproducible across runs and platforms.
struct EigenSystem {
  int dim = 0;
  std::vector<double> values;
  std::vector<double> vectors;  // row-major dim x dim

  std::span<const double> vector(int k) const {
    return std::span<const double>(vectors)
        .subspan(static_cast<std::size_t>(k) * static_cast<std::size_t>(dim),
                 static_cast<std::size_t>(dim));
  }
};

// Cyclic Jacobi rotations on a dense real symmetric matrix, iterated until
// the off-diagonal Frobenius norm is at most kJacobiTol * (1 + ||A||_F).
EigenSystem jacobi_eigensystem(std::span<const double> matrix, int dim);

// Indices grouped by eigenvalue equality within tol; the input order
// (descending values) is preserved inside and across classes.
std::vector<std::vector<int>> degeneracy_classes(const EigenSystem& eig,
                                                 double tol = kDegeneracyTol);

struct SpectralDecomposition {
  EigenSystem eig;
  std::vector<std::vector<int>> degeneracy_classes;  // at kDegeneracyTol
};

SpectralDecomposition eigendecompose(const Graph& g);

// Amplitude vector over the L vertices, unit 2-norm.
struct SingleParticleState {
  std::vector<std::complex<double>> amplitudes;

  static SingleParticleState from_real(std::span<const double> v);
  static SingleParticleState normalized(std::vector<std::complex<double>> v);

  std::size_t size() const { return amplitudes.size(); }
  double norm() const;
};

// Eigenvector of the largest adjacency eigenvalue; elementwise positive for
// connected graphs. Refuses disconnected input and reports a solver failure
// if the top eigenvalue comes out degenerate.
SingleParticleState ground_eigenvector(const SpectralDecomposition& sd,
                                       const Graph& g);

// Plane-wave modes x^(k)_j = L^{-1/2} exp(2 pi i k j / L), k = 0..L-1; exact
// ring eigenvectors with eigenvalue 2 cos(2 pi k / L). Requires L >= 3.
std::vector<SingleParticleState> fourier_modes(int l);

}  // namespace becgraph
