#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "becgraph/entanglement.hpp"
#include "becgraph/graph.hpp"
#include "becgraph/spectral.hpp"

namespace becgraph {

inline constexpr std::size_t kDefaultBasisCap = 2'000'000;

// Occupation-number basis of the fixed-N sector for L modes, in strict
// lexicographic descending order: (N,0,...,0) first, (0,...,0,N) last. The
// ordering is part of the serialization contract.
class FockBasis {
 public:
  static std::shared_ptr<const FockBasis> build(
      int modes, int particles, std::size_t cap = kDefaultBasisCap);

  // C(N+L-1, N), saturating at UINT64_MAX.
  static std::uint64_t dimension(int modes, int particles);

  int modes() const { return modes_; }
  int particles() const { return particles_; }
  std::size_t size() const { return size_; }

  std::span<const std::int32_t> occupation(std::size_t index) const;

  // Binary search over the sorted table; throws if the vector is not a
  // basis element.
  std::size_t index_of(std::span<const std::int32_t> occupation) const;

 private:
  FockBasis() = default;

  int modes_ = 0;
  int particles_ = 0;
  std::size_t size_ = 0;
  std::vector<std::int32_t> table_;  // size_ rows of modes_ entries
};

// State in a fixed-N sector; coefficients split into real and imaginary
// parts over the basis order.
struct FockState {
  std::shared_ptr<const FockBasis> basis;
  std::vector<double> re;
  std::vector<double> im;

  static FockState zero(std::shared_ptr<const FockBasis> basis);
  double norm() const;
  void normalize();
};

// N-particle condensate over a single-particle wavefunction: coefficient
// sqrt(N!/prod n_k!) prod_k x_k^{n_k}, assembled in log space. Real input
// amplitudes yield exactly real coefficients.
FockState condensate_state(const SingleParticleState& x,
                           std::shared_ptr<const FockBasis> basis);

// Occupation distribution of one vertex by direct summation of |C|^2 over
// basis states, independent of any closed form.
VertexOccupationDistribution vertex_marginal(const FockState& psi, int vertex);

// Dense real symmetric Hamiltonian on a fixed-N sector: hopping
// -sum_edges (b_i^dag b_j + h.c.) plus on-site interaction
// (u/2) sum_j n_j (n_j - 1) on the diagonal.
class ManyBodyHamiltonian {
 public:
  ManyBodyHamiltonian(std::shared_ptr<const FockBasis> basis,
                      std::vector<double> matrix, double hubbard_u);

  const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
  const std::vector<double>& matrix() const { return matrix_; }
  double hubbard_u() const { return hubbard_u_; }

  // Eigendecomposition, computed on first use and cached. Instances are not
  // safe for concurrent first access; use one instance per thread.
  const EigenSystem& spectrum() const;

 private:
  std::shared_ptr<const FockBasis> basis_;
  std::vector<double> matrix_;
  double hubbard_u_ = 0.0;
  mutable std::optional<EigenSystem> spectrum_;
};

ManyBodyHamiltonian build_hamiltonian(const Graph& g,
                                      std::shared_ptr<const FockBasis> basis,
                                      double hubbard_u = 0.0);

// exp(-iHt) psi through the cached eigendecomposition; exact to round-off,
// norm preserved.
FockState evolve(const FockState& psi, const ManyBodyHamiltonian& h, double t);

struct TimeSeriesPoint {
  double t;
  double entropy_bits;
};

std::vector<TimeSeriesPoint> entropy_timeseries(const FockState& psi0,
                                                const ManyBodyHamiltonian& h,
                                                int vertex,
                                                std::span<const double> times);

// JSON round-trip, nonzero coefficients only:
//   {"L": 2, "N": 1, "entries": [[[1,0], 0.7071, 0.0], ...]}
std::string fock_state_to_json(const FockState& psi);
FockState fock_state_from_json(const std::string& text,
                               std::size_t cap = kDefaultBasisCap);

}  // namespace becgraph
