#include "becgraph/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "becgraph/entanglement.hpp"
#include "becgraph/spectral.hpp"

namespace becgraph {

namespace {

struct Candidate {
  SearchWitness witness;
  double value;
};

struct RangeAccumulator {
  double best = -1.0;
  std::vector<Candidate> candidates;
  std::uint64_t connected = 0;
  double tie_tol = 0.0;

  void offer(double value, const SearchWitness& w) {
    if (value < best - tie_tol) return;
    if (value > best) best = value;
    candidates.push_back({w, value});
    if (candidates.size() > 8192) prune();
  }

  void prune() {
    std::erase_if(candidates, [&](const Candidate& c) {
      return c.value < best - tie_tol;
    });
  }
};

void scan_range(SearchMode mode, int vertex_count, int particles,
                bool eigenspace_max, std::uint64_t begin, std::uint64_t end,
                RangeAccumulator& acc) {
  const std::size_t l = static_cast<std::size_t>(vertex_count);
  std::vector<int> class_first(l), class_size(l);
  std::vector<double> projector_diag(l);

  for (std::uint64_t mask = begin; mask < end; ++mask) {
    const Graph g = Graph::from_upper_bits(vertex_count, mask);
    if (!is_connected(g)) continue;
    ++acc.connected;

    const SpectralDecomposition sd = eigendecompose(g);
    for (const auto& cls : sd.degeneracy_classes)
      for (const int k : cls) {
        class_first[static_cast<std::size_t>(k)] = cls.front();
        class_size[static_cast<std::size_t>(k)] =
            static_cast<int>(cls.size());
      }

    const int k_end = mode == SearchMode::ground_state ? 1 : vertex_count;
    for (int k = 0; k < k_end; ++k) {
      const int size = class_size[static_cast<std::size_t>(k)];
      const bool degenerate = size > 1;
      const bool use_projector = degenerate && eigenspace_max;
      if (use_projector && k == class_first[static_cast<std::size_t>(k)]) {
        // Projector diagonal is shared by the whole class; compute once.
        std::fill(projector_diag.begin(), projector_diag.end(), 0.0);
        for (int kk = k; kk < k + size; ++kk) {
          const auto row = sd.eig.vector(kk);
          for (std::size_t i = 0; i < l; ++i)
            projector_diag[i] += row[i] * row[i];
        }
      }
      const auto row = sd.eig.vector(k);
      for (int i = 0; i < vertex_count; ++i) {
        const double p =
            use_projector
                ? std::min(projector_diag[static_cast<std::size_t>(i)], 1.0)
                : row[static_cast<std::size_t>(i)] *
                      row[static_cast<std::size_t>(i)];
        acc.offer(vertex_entropy(p, particles),
                  {mask, i, k, p, degenerate});
      }
    }
  }
}

SearchResult run_search(SearchMode mode, int vertex_count, int particles,
                        const SearchOptions& options) {
  if (particles < 1)
    throw std::invalid_argument("search needs at least one particle");
  if (options.jobs < 1)
    throw std::invalid_argument("search needs at least one job");

  const GraphEnumeration enumeration(vertex_count, false, options.cap);
  const std::uint64_t total = enumeration.total_masks();
  const bool eigenspace_max =
      mode == SearchMode::any_eigenstate && options.eigenspace_max;

  const std::uint64_t jobs = std::min<std::uint64_t>(
      static_cast<std::uint64_t>(options.jobs), total);
  std::vector<RangeAccumulator> parts(jobs);
  for (auto& part : parts) part.tie_tol = options.tie_tol;

  if (jobs <= 1) {
    scan_range(mode, vertex_count, particles, eigenspace_max, 0, total,
               parts[0]);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (std::uint64_t w = 0; w < jobs; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      workers.emplace_back([&, w, begin, end] {
        scan_range(mode, vertex_count, particles, eigenspace_max, begin,
                   end, parts[w]);
      });
    }
    for (auto& t : workers) t.join();
  }

  SearchResult result;
  result.mode = mode;
  result.vertex_count = vertex_count;
  result.particles = particles;
  result.eigenspace_max = eigenspace_max;
  result.evaluated_count = total;
  result.best_value_bits = -1.0;
  for (const auto& part : parts) {
    result.connected_count += part.connected;
    result.best_value_bits = std::max(result.best_value_bits, part.best);
  }
  if (result.connected_count == 0)
    throw std::runtime_error("no connected graph was evaluated");

  // Deterministic merge, independent of the partition: filter every range's
  // candidates against the global maximum, then order lexicographically.
  for (const auto& part : parts)
    for (const auto& c : part.candidates)
      if (c.value >= result.best_value_bits - options.tie_tol)
        result.witnesses.push_back(c.witness);
  std::sort(result.witnesses.begin(), result.witnesses.end(),
            [](const SearchWitness& a, const SearchWitness& b) {
              if (a.graph_bits != b.graph_bits)
                return a.graph_bits < b.graph_bits;
              if (a.vertex != b.vertex) return a.vertex < b.vertex;
              return a.eigenstate < b.eigenstate;
            });
  return result;
}

}  // namespace

SearchResult search_ground(int vertex_count, int particles,
                           const SearchOptions& options) {
  return run_search(SearchMode::ground_state, vertex_count, particles,
                    options);
}

SearchResult search_any_eigenstate(int vertex_count, int particles,
                                   const SearchOptions& options) {
  return run_search(SearchMode::any_eigenstate, vertex_count, particles,
                    options);
}

}  // namespace becgraph
