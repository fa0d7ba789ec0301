#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace becgraph {

// Simple undirected graph on L >= 1 vertices (0-indexed), stored as the
// bitmask of its strict upper-triangle adjacency entries. The adjacency
// matrix is therefore symmetric with zero diagonal by construction; self
// loops and duplicate edges cannot be represented. Values are cheap to copy
// and safe to share across threads once built.
class Graph {
 public:
  explicit Graph(int vertex_count);

  // Parses "u v" pairs, one edge per line. '#' starts a comment, blank lines
  // are ignored, duplicate edges collapse. Errors carry the line number.
  static Graph from_edge_list(std::string_view text, int vertex_count);

  // Inverse of upper_bits64(); requires pair_count(L) <= 64.
  static Graph from_upper_bits(int vertex_count, std::uint64_t bits);

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t pair_count() const;

  // Edges as (u, v) with u < v, ordered by bit index.
  std::vector<std::pair<int, int>> edges() const;
  std::vector<int> degrees() const;

  std::uint64_t upper_bits64() const;

  // Dense row-major L x L matrix with entries in {0, 1}.
  std::vector<double> adjacency() const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t pair_index(int u, int v) const;

  int vertex_count_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> bits_;
};

enum class NamedGraph { star, ring, path, complete };

// star: vertex 0 adjacent to all others; ring: the L-cycle (L >= 3);
// path: 0-1-...-(L-1); complete: all L(L-1)/2 edges.
Graph generate_named(NamedGraph kind, int vertex_count);
Graph generate_named(std::string_view kind, int vertex_count);

bool is_connected(const Graph& g);

// Two-coloring with every edge bichromatic; the lowest-index vertex of each
// connected component carries side 0.
struct BipartitionLabel {
  std::vector<std::uint8_t> side;
};

std::optional<BipartitionLabel> is_bipartite(const Graph& g);

inline constexpr int kDefaultEnumerationCap = 7;

std::uint64_t labeled_graph_count(int vertex_count);

// Streams every labeled graph on L vertices exactly once, in increasing
// order of the upper-triangle bitmask, optionally restricted to connected
// graphs. Refuses vertex counts above the cap.
class GraphEnumeration {
 public:
  GraphEnumeration(int vertex_count, bool connected_only,
                   int cap = kDefaultEnumerationCap);

  class iterator {
   public:
    using value_type = Graph;
    using difference_type = std::ptrdiff_t;

    iterator(int vertex_count, std::uint64_t mask, std::uint64_t total,
             bool connected_only);

    Graph operator*() const;
    iterator& operator++();
    bool operator==(const iterator& other) const {
      return mask_ == other.mask_;
    }

   private:
    void skip_filtered();

    int vertex_count_;
    std::uint64_t mask_;
    std::uint64_t total_;
    bool connected_only_;
  };

  iterator begin() const;
  iterator end() const;
  std::uint64_t total_masks() const { return total_; }
  int vertex_count() const { return vertex_count_; }

 private:
  int vertex_count_;
  bool connected_only_;
  std::uint64_t total_;
};

}  // namespace becgraph
