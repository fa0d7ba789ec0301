#include "becgraph/graph.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>
#include <string>

namespace becgraph {

namespace {

std::string fmt_vertex_range(int vertex_count) {
  return "[0, " + std::to_string(vertex_count) + ")";
}

}  // namespace

Graph::Graph(int vertex_count) : vertex_count_(vertex_count) {
  if (vertex_count < 1)
    throw std::invalid_argument("graph needs at least one vertex, got " +
                                std::to_string(vertex_count));
  bits_.assign((pair_count() + 63) / 64, 0);
}

std::size_t Graph::pair_count() const {
  const std::size_t l = static_cast<std::size_t>(vertex_count_);
  return l * (l - 1) / 2;
}

std::size_t Graph::pair_index(int u, int v) const {
  // u < v; pairs ordered (0,1),(0,2),...,(0,L-1),(1,2),...
  const std::size_t lu = static_cast<std::size_t>(u);
  const std::size_t l = static_cast<std::size_t>(vertex_count_);
  return lu * l - lu * (lu + 1) / 2 + static_cast<std::size_t>(v - u - 1);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_)
    throw std::invalid_argument("vertex id out of range " +
                                fmt_vertex_range(vertex_count_));
  if (u == v)
    throw std::invalid_argument("self-loop rejected at vertex " +
                                std::to_string(u));
  if (u > v) std::swap(u, v);
  const std::size_t idx = pair_index(u, v);
  std::uint64_t& word = bits_[idx / 64];
  const std::uint64_t bit = std::uint64_t{1} << (idx % 64);
  if (!(word & bit)) {
    word |= bit;
    ++edge_count_;
  }
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_) return false;
  if (u > v) std::swap(u, v);
  const std::size_t idx = pair_index(u, v);
  return (bits_[idx / 64] >> (idx % 64)) & 1;
}

Graph Graph::from_edge_list(std::string_view text, int vertex_count) {
  Graph g(vertex_count);
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    int ids[2];
    int n_ids = 0;
    std::size_t i = 0;
    bool bad = false;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                                 line[i] == '\r'))
        ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
             line[j] != '\r')
        ++j;
      int value = 0;
      const auto res =
          std::from_chars(line.data() + i, line.data() + j, value);
      if (res.ec != std::errc{} || res.ptr != line.data() + j || n_ids >= 2) {
        bad = true;
        break;
      }
      ids[n_ids++] = value;
      i = j;
    }
    if (bad || (n_ids != 0 && n_ids != 2))
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected two vertex ids 'u v'");
    if (n_ids == 2) {
      if (ids[0] < 0 || ids[0] >= vertex_count || ids[1] < 0 ||
          ids[1] >= vertex_count)
        throw std::invalid_argument(
            "edge list line " + std::to_string(line_no) + ": vertex id out of range " +
            fmt_vertex_range(vertex_count));
      if (ids[0] == ids[1])
        throw std::invalid_argument("edge list line " +
                                    std::to_string(line_no) +
                                    ": self-loop rejected");
      g.add_edge(ids[0], ids[1]);
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return g;
}

Graph Graph::from_upper_bits(int vertex_count, std::uint64_t bits) {
  Graph g(vertex_count);
  if (g.pair_count() > 64)
    throw std::invalid_argument("from_upper_bits supports at most 64 vertex pairs");
  if (g.pair_count() < 64 && (bits >> g.pair_count()) != 0)
    throw std::invalid_argument("upper-triangle bitmask has bits beyond pair count");
  if (!g.bits_.empty()) g.bits_[0] = bits;
  std::size_t count = 0;
  for (const std::uint64_t w : g.bits_) count += std::popcount(w);
  g.edge_count_ = count;
  return g;
}

std::uint64_t Graph::upper_bits64() const {
  if (pair_count() > 64)
    throw std::invalid_argument("upper_bits64 supports at most 64 vertex pairs");
  return bits_.empty() ? 0 : bits_[0];
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 0; u < vertex_count_; ++u)
    for (int v = u + 1; v < vertex_count_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count_), 0);
  for (const auto& [u, v] : edges()) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

std::vector<double> Graph::adjacency() const {
  const std::size_t l = static_cast<std::size_t>(vertex_count_);
  std::vector<double> a(l * l, 0.0);
  for (const auto& [u, v] : edges()) {
    a[static_cast<std::size_t>(u) * l + static_cast<std::size_t>(v)] = 1.0;
    a[static_cast<std::size_t>(v) * l + static_cast<std::size_t>(u)] = 1.0;
  }
  return a;
}

Graph generate_named(NamedGraph kind, int vertex_count) {
  const int min_l = kind == NamedGraph::ring ? 3 : 1;
  if (vertex_count < min_l)
    throw std::invalid_argument(
        "named graph needs at least " + std::to_string(min_l) +
        " vertices, got " + std::to_string(vertex_count));
  Graph g(vertex_count);
  switch (kind) {
    case NamedGraph::star:
      for (int v = 1; v < vertex_count; ++v) g.add_edge(0, v);
      break;
    case NamedGraph::ring:
      for (int v = 0; v < vertex_count; ++v)
        g.add_edge(v, (v + 1) % vertex_count);
      break;
    case NamedGraph::path:
      for (int v = 0; v + 1 < vertex_count; ++v) g.add_edge(v, v + 1);
      break;
    case NamedGraph::complete:
      for (int u = 0; u < vertex_count; ++u)
        for (int v = u + 1; v < vertex_count; ++v) g.add_edge(u, v);
      break;
  }
  return g;
}

Graph generate_named(std::string_view kind, int vertex_count) {
  if (kind == "star") return generate_named(NamedGraph::star, vertex_count);
  if (kind == "ring") return generate_named(NamedGraph::ring, vertex_count);
  if (kind == "path") return generate_named(NamedGraph::path, vertex_count);
  if (kind == "complete")
    return generate_named(NamedGraph::complete, vertex_count);
  throw std::invalid_argument("unknown graph kind '" + std::string(kind) +
                              "' (expected star, ring, path, complete)");
}

bool is_connected(const Graph& g) {
  const int l = g.vertex_count();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(l), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < l; ++v) {
      if (!seen[static_cast<std::size_t>(v)] && g.has_edge(u, v)) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == l;
}

std::optional<BipartitionLabel> is_bipartite(const Graph& g) {
  const int l = g.vertex_count();
  std::vector<std::int8_t> side(static_cast<std::size_t>(l), -1);
  std::vector<int> queue;
  for (int root = 0; root < l; ++root) {
    if (side[static_cast<std::size_t>(root)] != -1) continue;
    side[static_cast<std::size_t>(root)] = 0;
    queue.assign(1, root);
    std::size_t head = 0;
    while (head < queue.size()) {
      const int u = queue[head++];
      for (int v = 0; v < l; ++v) {
        if (!g.has_edge(u, v)) continue;
        auto& sv = side[static_cast<std::size_t>(v)];
        if (sv == -1) {
          sv = static_cast<std::int8_t>(
              1 - side[static_cast<std::size_t>(u)]);
          queue.push_back(v);
        } else if (sv == side[static_cast<std::size_t>(u)]) {
          return std::nullopt;  // odd cycle
        }
      }
    }
  }
  BipartitionLabel label;
  label.side.assign(side.begin(), side.end());
  return label;
}

std::uint64_t labeled_graph_count(int vertex_count) {
  const std::size_t pairs =
      static_cast<std::size_t>(vertex_count) *
      static_cast<std::size_t>(vertex_count - 1) / 2;
  if (pairs >= 64)
    throw std::invalid_argument("labeled graph count overflows 64 bits");
  return std::uint64_t{1} << pairs;
}

GraphEnumeration::GraphEnumeration(int vertex_count, bool connected_only,
                                   int cap)
    : vertex_count_(vertex_count), connected_only_(connected_only) {
  if (vertex_count < 1)
    throw std::invalid_argument("enumeration needs at least one vertex");
  if (vertex_count > cap)
    throw std::invalid_argument(
        "enumeration refused: " + std::to_string(vertex_count) +
        " vertices exceeds the cap of " + std::to_string(cap) +
        " (2^" + std::to_string(static_cast<long long>(vertex_count) *
                                (vertex_count - 1) / 2) +
        " graphs)");
  total_ = labeled_graph_count(vertex_count);
}

GraphEnumeration::iterator::iterator(int vertex_count, std::uint64_t mask,
                                     std::uint64_t total, bool connected_only)
    : vertex_count_(vertex_count),
      mask_(mask),
      total_(total),
      connected_only_(connected_only) {
  skip_filtered();
}

void GraphEnumeration::iterator::skip_filtered() {
  if (!connected_only_) return;
  while (mask_ < total_ &&
         !is_connected(Graph::from_upper_bits(vertex_count_, mask_)))
    ++mask_;
}

Graph GraphEnumeration::iterator::operator*() const {
  return Graph::from_upper_bits(vertex_count_, mask_);
}

GraphEnumeration::iterator& GraphEnumeration::iterator::operator++() {
  ++mask_;
  skip_filtered();
  return *this;
}

GraphEnumeration::iterator GraphEnumeration::begin() const {
  return iterator(vertex_count_, 0, total_, connected_only_);
}

GraphEnumeration::iterator GraphEnumeration::end() const {
  return iterator(vertex_count_, total_, total_, false);
}

}  // namespace becgraph
