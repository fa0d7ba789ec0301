#pragma once

#include <span>
#include <vector>

#include "becgraph/graph.hpp"
#include "becgraph/spectral.hpp"

namespace becgraph {

// Occupation-number distribution of a single vertex: probabilities[m] is the
// chance of finding m of the N particles there.
struct VertexOccupationDistribution {
  int vertex = -1;  // -1 when not tied to a graph vertex
  int particles = 0;
  std::vector<double> probabilities;  // size N + 1
};

// -sum p log2 p with the 0 log 0 = 0 convention.
double shannon_entropy_bits(std::span<const double> probabilities);

// Binomial occupation law Binom(N, p) of a condensate vertex with square
// amplitude p. Exact products up to N = 64, log-gamma arithmetic above.
VertexOccupationDistribution vertex_distribution(double p, int particles);

// Entropy in bits of vertex_distribution(p, N); lies in [0, log2(N+1)].
double vertex_entropy(double p, int particles);

// Largest vertex entropy over p, attained at p = 1/2:
// N - 2^-N sum_m C(N,m) log2 C(N,m).
double max_entropy(int particles);

struct CurvePoint {
  double p;
  int particles;
  double normalized_entropy;  // vertex_entropy / log2(N+1)
};

// Normalized entropy on a uniform p-grid over [0, 1] for each N (grid >= 2).
std::vector<CurvePoint> entropy_curve(std::span<const int> particle_numbers,
                                      int grid);

struct RatioPoint {
  int particles;
  double ratio;  // max_entropy(N) / log2(N+1)
};

// Ratio at logarithmically spaced particle numbers from 1 to max_particles.
std::vector<RatioPoint> ratio_curve(int max_particles, int samples);

struct EntanglementCell {
  int eigenstate;
  int vertex;
  double p;            // square amplitude (or eigenspace projector diagonal)
  double entropy_bits;
  bool degenerate;     // eigenstate sits in a degeneracy class of size > 1
};

struct EntanglementReport {
  int vertex_count = 0;
  int particles = 0;
  bool eigenspace_max = false;
  std::vector<double> eigenvalues;
  std::vector<std::vector<int>> degeneracy_classes;
  std::vector<EntanglementCell> cells;  // eigenstate-major, then vertex

  const EntanglementCell& cell(int eigenstate, int vertex) const {
    return cells[static_cast<std::size_t>(eigenstate) *
                     static_cast<std::size_t>(vertex_count) +
                 static_cast<std::size_t>(vertex)];
  }
};

// Per-(eigenstate, vertex) square amplitudes and entropies for condensates
// over every adjacency eigenvector. With eigenspace_max set, vertices of a
// degenerate eigenstate report the basis-independent maximum square
// amplitude over the eigenspace, i.e. the spectral projector diagonal.
EntanglementReport graph_entanglement_report(const Graph& g, int particles,
                                             bool eigenspace_max = false);

}  // namespace becgraph
