#include "emwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "emwalk/rng.hpp"

namespace emwalk {

Edge slot_edge(std::uint64_t n, std::uint64_t index) {
  if (index >= slot_count(n)) throw std::out_of_range("slot index out of range");
  // Row u starts at u(2n-u-1)/2. Estimate u from the quadratic, then fix up.
  const double nn = static_cast<double>(n);
  const double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index);
  auto u = static_cast<std::uint64_t>(std::max(0.0, std::floor(((2 * nn - 1) - std::sqrt(std::max(disc, 0.0))) / 2)));
  auto row_start = [n](std::uint64_t r) { return r * (2 * n - r - 1) / 2; };
  while (u > 0 && row_start(u) > index) --u;
  while (u + 1 < n && row_start(u + 1) <= index) ++u;
  const std::uint64_t v = index - row_start(u) + u + 1;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

GraphState::GraphState(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

GraphState GraphState::from_edges(std::size_t n, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop in edge list");
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("duplicate edge in edge list");
  }
  return from_sorted_edges(n, std::move(edges));
}

GraphState GraphState::from_sorted_edges(std::size_t n, std::vector<Edge> edges) {
  GraphState g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

void GraphState::build_adjacency() {
  offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so both endpoint lists come out sorted:
  // for vertex x, entries y < x arrive (as e.u = y) before entries y > x.
  for (const auto& e : edges_) {
    adjacency_[fill[e.v]++] = e.u;
  }
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
  }
}

bool GraphState::has_edge(Vertex u, Vertex v) const noexcept {
  if (u >= n_ || v >= n_ || u == v) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t GraphState::min_degree() const noexcept {
  std::size_t best = n_ == 0 ? 0 : degree(0);
  for (Vertex x = 1; x < n_; ++x) best = std::min(best, degree(x));
  return best;
}

std::size_t GraphState::max_degree() const noexcept {
  std::size_t best = 0;
  for (Vertex x = 0; x < n_; ++x) best = std::max(best, degree(x));
  return best;
}

std::size_t GraphState::isolated_count() const noexcept {
  std::size_t count = 0;
  for (Vertex x = 0; x < n_; ++x) count += degree(x) == 0;
  return count;
}

std::vector<std::size_t> GraphState::components() const {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n_, unset);
  std::vector<Vertex> stack;
  std::size_t next = 0;
  for (Vertex root = 0; root < n_; ++root) {
    if (comp[root] != unset) continue;
    comp[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : neighbors(x)) {
        if (comp[y] == unset) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool GraphState::is_connected() const {
  if (n_ <= 1) return true;
  const auto comp = components();
  return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

std::uint64_t GraphState::fingerprint() const noexcept {
  std::uint64_t h = mix64(n_ + 0x51ed270b27ULL);
  for (const auto& e : edges_) {
    h = mix64(h ^ ((static_cast<std::uint64_t>(e.u) << 32) | e.v));
  }
  return h;
}

GraphState complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(slot_count(n));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return GraphState::from_sorted_edges(n, std::move(edges));
}

GraphState path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return GraphState::from_sorted_edges(n, std::move(edges));
}

GraphState cycle_graph(std::size_t n) {
  if (n < 3) return path_graph(n);
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  edges.push_back({0, static_cast<Vertex>(n - 1)});
  return GraphState::from_edges(n, std::move(edges));
}

GraphState star_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({0, v});
  return GraphState::from_sorted_edges(n, std::move(edges));
}

GraphState disjoint_union(const GraphState& a, const GraphState& b) {
  const auto shift = static_cast<Vertex>(a.vertex_count());
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  for (const auto& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return GraphState::from_sorted_edges(a.vertex_count() + b.vertex_count(), std::move(edges));
}

GraphState induced_subgraph(const GraphState& g, std::span<const Vertex> keep) {
  constexpr auto absent = static_cast<Vertex>(-1);
  std::vector<Vertex> relabel(g.vertex_count(), absent);
  for (std::size_t i = 0; i < keep.size(); ++i) relabel[keep[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (relabel[e.u] != absent && relabel[e.v] != absent) edges.push_back({relabel[e.u], relabel[e.v]});
  }
  return GraphState::from_edges(keep.size(), std::move(edges));
}

}  // namespace emwalk
