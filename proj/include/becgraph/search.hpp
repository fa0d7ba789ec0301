#pragma once

#include <cstdint>
#include <vector>

#include "becgraph/graph.hpp"

namespace becgraph {

enum class SearchMode { ground_state, any_eigenstate };

struct SearchWitness {
  std::uint64_t graph_bits;
  int vertex;
  int eigenstate;
  double p;         // square amplitude at the witness cell
  bool degenerate;  // eigenstate sits in a degeneracy class of size > 1
};

struct SearchResult {
  SearchMode mode = SearchMode::ground_state;
  int vertex_count = 0;
  int particles = 0;
  bool eigenspace_max = false;
  double best_value_bits = 0.0;
  // Every global maximizer within tie_tol, sorted by (graph_bits, vertex,
  // eigenstate).
  std::vector<SearchWitness> witnesses;
  std::uint64_t evaluated_count = 0;  // graphs enumerated
  std::uint64_t connected_count = 0;  // graphs whose functional was evaluated
};

struct SearchOptions {
  int jobs = 1;
  int cap = kDefaultEnumerationCap;
  bool eigenspace_max = false;  // any_eigenstate mode only
  double tie_tol = 1e-10;
};

// Maximize the ground-state vertex entropy over all connected labeled graphs
// on L vertices and all vertices. Disconnected graphs are skipped (their
// ground condensate is not unique).
SearchResult search_ground(int vertex_count, int particles,
                           const SearchOptions& options = {});

// Maximize over all eigenstates as well; degenerate eigenstates contribute
// either the solver basis amplitudes or, with eigenspace_max, the spectral
// projector diagonal.
SearchResult search_any_eigenstate(int vertex_count, int particles,
                                   const SearchOptions& options = {});

}  // namespace becgraph
