#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace emwalk {

using Vertex = std::uint32_t;

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Number of vertex pairs (edge slots) on n vertices.
constexpr std::uint64_t slot_count(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Position of {u, v} (u < v) in the lexicographic order of all slots.
constexpr std::uint64_t slot_index(std::uint64_t n, Vertex u, Vertex v) noexcept {
  return static_cast<std::uint64_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

/// Inverse of slot_index.
Edge slot_edge(std::uint64_t n, std::uint64_t index);

/// One immutable snapshot G_t = (V, E_t) on V = {0, ..., n-1}.
///
/// Edges are kept sorted lexicographically; adjacency is a CSR array with
/// sorted neighbor lists. Both are built once at construction.
class GraphState {
 public:
  GraphState() = default;

  /// Empty graph on n vertices.
  explicit GraphState(std::size_t n);

  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range
  /// endpoints. Edge orientation is normalised to u < v.
  static GraphState from_edges(std::size_t n, std::vector<Edge> edges);

  /// Trusted constructor for edges already sorted, deduplicated and in range.
  static GraphState from_sorted_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::size_t degree(Vertex x) const noexcept { return offsets_[x + 1] - offsets_[x]; }
  std::span<const Vertex> neighbors(Vertex x) const noexcept {
    return {adjacency_.data() + offsets_[x], adjacency_.data() + offsets_[x + 1]};
  }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const Vertex> adjacency() const noexcept { return adjacency_; }

  bool has_edge(Vertex u, Vertex v) const noexcept;

  std::size_t min_degree() const noexcept;
  std::size_t max_degree() const noexcept;
  std::size_t isolated_count() const noexcept;

  /// Sum of degrees over all vertices, i.e. 2|E|.
  std::size_t volume() const noexcept { return 2 * edges_.size(); }

  /// Connectivity over all n vertices (isolated vertices count as components).
  bool is_connected() const;

  /// Component id per vertex, numbered in order of smallest member.
  std::vector<std::size_t> components() const;

  /// Stable 64-bit hash of (n, E); equal graphs hash equally.
  std::uint64_t fingerprint() const noexcept;

  friend bool operator==(const GraphState& a, const GraphState& b) noexcept {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency();

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

GraphState complete_graph(std::size_t n);
GraphState path_graph(std::size_t n);
GraphState cycle_graph(std::size_t n);
GraphState star_graph(std::size_t n);
/// Vertices of b are shifted by a.vertex_count().
GraphState disjoint_union(const GraphState& a, const GraphState& b);
/// Subgraph induced by `keep` (sorted, distinct); vertex i of the result is keep[i].
GraphState induced_subgraph(const GraphState& g, std::span<const Vertex> keep);

}  // namespace emwalk
