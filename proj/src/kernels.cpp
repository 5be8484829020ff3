#include "emwalk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace emwalk::kernels {
namespace {

void check_sizes(const GraphState& g, std::span<const double> in, std::span<double> out, std::size_t rows) {
  const std::size_t len = g.vertex_count() * rows;
  if (in.size() != len || out.size() != len) throw std::length_error("distribution length does not match graph");
}

std::vector<double> inverse_degrees(const GraphState& g) {
  const std::size_t n = g.vertex_count();
  std::vector<double> inv(n, 0.0);
  for (Vertex x = 0; x < n; ++x) {
    const std::size_t deg = g.degree(x);
    inv[x] = deg == 0 ? 0.0 : 1.0 / static_cast<double>(deg);
  }
  return inv;
}

// out[v] = stay(v) * in[v] + move * sum_{u ~ v} in[u] / deg(u)
inline void pull_row(WalkKind kind, const std::size_t* offsets, const Vertex* adj, const double* inv_deg,
                     const double* in, double* out, std::ptrdiff_t n) {
  const double move = kind == WalkKind::Lazy ? 0.5 : 1.0;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    const std::size_t begin = offsets[v];
    const std::size_t end = offsets[v + 1];
    double acc = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      const Vertex u = adj[k];
      acc += in[u] * inv_deg[u];
    }
    const double stay = begin == end ? 1.0 : 1.0 - move;
    out[v] = stay * in[v] + move * acc;
  }
}

}  // namespace

void step_omp(WalkKind kind, const GraphState& g, std::span<const double> in, std::span<double> out) {
  check_sizes(g, in, out, 1);
  const auto inv = inverse_degrees(g);
  pull_row(kind, g.offsets().data(), g.adjacency().data(), inv.data(), in.data(), out.data(),
           static_cast<std::ptrdiff_t>(g.vertex_count()));
}

void step_serial(WalkKind kind, const GraphState& g, std::span<const double> in, std::span<double> out) {
  check_sizes(g, in, out, 1);
  const double move = kind == WalkKind::Lazy ? 0.5 : 1.0;
  std::fill(out.begin(), out.end(), 0.0);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const auto nb = g.neighbors(u);
    if (nb.empty()) {
      out[u] += in[u];
      continue;
    }
    out[u] += (1.0 - move) * in[u];
    const double share = move * in[u] / static_cast<double>(nb.size());
    for (Vertex v : nb) out[v] += share;
  }
}

void batch_step_omp(WalkKind kind, const GraphState& g, std::span<const double> in, std::span<double> out,
                    std::size_t rows) {
  check_sizes(g, in, out, rows);
  const auto n = static_cast<std::ptrdiff_t>(g.vertex_count());
  const auto inv = inverse_degrees(g);
  const std::size_t* offsets = g.offsets().data();
  const Vertex* adj = g.adjacency().data();
  const double move = kind == WalkKind::Lazy ? 0.5 : 1.0;
  const auto total = static_cast<std::ptrdiff_t>(rows) * n;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const std::ptrdiff_t row = idx / n;
    const std::ptrdiff_t v = idx % n;
    const double* src = in.data() + row * n;
    double acc = 0.0;
    for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) acc += src[adj[k]] * inv[adj[k]];
    const double stay = offsets[v] == offsets[v + 1] ? 1.0 : 1.0 - move;
    out[idx] = stay * src[v] + move * acc;
  }
}

void batch_step_serial(WalkKind kind, const GraphState& g, std::span<const double> in, std::span<double> out,
                       std::size_t rows) {
  check_sizes(g, in, out, rows);
  const std::size_t n = g.vertex_count();
  for (std::size_t row = 0; row < rows; ++row) {
    step_serial(kind, g, in.subspan(row * n, n), out.subspan(row * n, n));
  }
}

void batch_tv_omp(std::span<const double> batch, std::span<const double> target, std::span<double> out,
                  std::size_t rows) {
  const std::size_t n = target.size();
  if (batch.size() != n * rows || out.size() != rows) throw std::length_error("batch shape mismatch");
  const auto r = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < r; ++row) {
    const double* src = batch.data() + row * static_cast<std::ptrdiff_t>(n);
    double sum = 0.0;
    for (std::size_t x = 0; x < n; ++x) sum += std::abs(src[x] - target[x]);
    out[row] = 0.5 * sum;
  }
}

}  // namespace emwalk::kernels
