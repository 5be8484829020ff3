#include "emwalk/evolution.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace emwalk {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
}

std::uint64_t binomial(std::uint64_t trials, double p, CounterRng& rng) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<std::uint64_t> dist(trials, p);
  return dist(rng);
}

// Maps sorted ranks within the complement of `present` (sorted slot ids) to
// slot ids: the r-th absent slot is r + #{present slots below it}.
std::vector<std::uint64_t> absent_ranks_to_slots(std::span<const std::uint64_t> ranks,
                                                 std::span<const std::uint64_t> present) {
  std::vector<std::uint64_t> slots;
  slots.reserve(ranks.size());
  std::size_t j = 0;
  for (std::uint64_t r : ranks) {
    while (j < present.size() && present[j] <= r + j) ++j;
    slots.push_back(r + j);
  }
  return slots;
}

}  // namespace

std::vector<std::uint64_t> sample_without_replacement(std::uint64_t range, std::uint64_t k, CounterRng& rng) {
  if (k > range) throw std::invalid_argument("cannot draw more distinct values than the range holds");
  std::vector<std::uint64_t> out;
  if (k == 0) return out;
  if (2 * k > range) {
    // Dense draw: pick the complement and invert.
    const auto skip = sample_without_replacement(range, range - k, rng);
    out.reserve(k);
    std::size_t j = 0;
    for (std::uint64_t x = 0; x < range; ++x) {
      if (j < skip.size() && skip[j] == x) {
        ++j;
      } else {
        out.push_back(x);
      }
    }
    return out;
  }
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(2 * k);
  out.reserve(k);
  for (std::uint64_t j = range - k; j < range; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GraphState sample_er(std::size_t n, double p, CounterRng& rng) {
  check_probability(p);
  const std::uint64_t slots = slot_count(n);
  const auto picked = sample_without_replacement(slots, binomial(slots, p, rng), rng);
  std::vector<Edge> edges;
  edges.reserve(picked.size());
  for (auto s : picked) edges.push_back(slot_edge(n, s));
  return GraphState::from_sorted_edges(n, std::move(edges));
}

GraphState sample_er(std::size_t n, double p, std::uint64_t seed) {
  CounterRng rng(seed);
  return sample_er(n, p, rng);
}

EvolveResult evolve_step(const GraphState& g, const ModelParams& params, CounterRng& rng) {
  if (g.vertex_count() != params.n) throw std::invalid_argument("graph size does not match model parameters");
  check_probability(params.p);
  check_probability(params.q);

  const std::uint64_t n = params.n;
  const auto edges = g.edges();
  const std::uint64_t present = edges.size();
  const std::uint64_t absent = slot_count(n) - present;

  const std::uint64_t opened = binomial(absent, params.p, rng);
  const std::uint64_t closed = binomial(present, params.q, rng);

  std::vector<std::uint64_t> present_slots;
  present_slots.reserve(present);
  for (const auto& e : edges) present_slots.push_back(slot_index(n, e.u, e.v));

  const auto open_ranks = sample_without_replacement(absent, opened, rng);
  const auto open_slots = absent_ranks_to_slots(open_ranks, present_slots);
  const auto close_positions = sample_without_replacement(present, closed, rng);

  EvolveResult result;
  result.added.reserve(open_slots.size());
  for (auto s : open_slots) result.added.push_back(slot_edge(n, s));
  result.removed.reserve(close_positions.size());
  for (auto i : close_positions) result.removed.push_back(edges[i]);

  // Merge survivors with new edges; both are sorted.
  std::vector<Edge> next;
  next.reserve(present - closed + opened);
  std::size_t c = 0;
  std::size_t a = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (c < close_positions.size() && close_positions[c] == i) {
      ++c;
      continue;
    }
    while (a < result.added.size() && result.added[a] < edges[i]) next.push_back(result.added[a++]);
    next.push_back(edges[i]);
  }
  while (a < result.added.size()) next.push_back(result.added[a++]);

  result.graph = GraphState::from_sorted_edges(n, std::move(next));
  return result;
}

EvolveResult evolve_step_reference(const GraphState& g, const ModelParams& params, CounterRng& rng) {
  if (g.vertex_count() != params.n) throw std::invalid_argument("graph size does not match model parameters");
  check_probability(params.p);
  check_probability(params.q);

  const auto n = static_cast<Vertex>(params.n);
  EvolveResult result;
  std::vector<Edge> next;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const bool was = g.has_edge(u, v);
      const bool now = was ? !rng.bernoulli(params.q) : rng.bernoulli(params.p);
      if (now) next.push_back({u, v});
      if (was && !now) result.removed.push_back({u, v});
      if (!was && now) result.added.push_back({u, v});
    }
  }
  result.graph = GraphState::from_sorted_edges(params.n, std::move(next));
  return result;
}

Trajectory::Trajectory(ModelParams params, std::uint64_t seed)
    : params_(params), seed_(seed), initial_sampled_(true) {
  CounterRng rng(derive_seed(seed, kInitialStream));
  snapshots_.push_back(sample_er(params.n, params.p_tilde(), rng));
  added_.emplace_back();
  removed_.emplace_back();
}

Trajectory::Trajectory(ModelParams params, std::uint64_t seed, GraphState initial)
    : params_(params), seed_(seed), initial_sampled_(false) {
  if (initial.vertex_count() != params.n) throw std::invalid_argument("initial graph size does not match n");
  snapshots_.push_back(std::move(initial));
  added_.emplace_back();
  removed_.emplace_back();
}

void Trajectory::extend_to(std::size_t t) {
  while (snapshots_.size() <= t) {
    const std::size_t next = snapshots_.size();
    CounterRng rng(derive_seed(seed_, next));
    auto step = evolve_step(snapshots_.back(), params_, rng);
    snapshots_.push_back(std::move(step.graph));
    added_.push_back(std::move(step.added));
    removed_.push_back(std::move(step.removed));
  }
}

const GraphState& Trajectory::at(std::size_t t) {
  extend_to(t);
  return snapshots_[t];
}

std::size_t Trajectory::changes(std::size_t t) {
  extend_to(t);
  return added_[t].size() + removed_[t].size();
}

std::span<const Edge> Trajectory::added(std::size_t t) {
  extend_to(t);
  return added_[t];
}

std::span<const Edge> Trajectory::removed(std::size_t t) {
  extend_to(t);
  return removed_[t];
}

std::uint64_t Trajectory::fingerprint(std::size_t t_max) {
  std::uint64_t h = mix64(seed_);
  for (std::size_t t = 0; t <= t_max; ++t) h = mix64(h ^ at(t).fingerprint());
  return h;
}

}  // namespace emwalk
