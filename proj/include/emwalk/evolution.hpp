#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "emwalk/graph.hpp"
#include "emwalk/model.hpp"
#include "emwalk/rng.hpp"

namespace emwalk {

/// Erdős–Rényi G(n, p): each of the C(n,2) slots open independently w.p. p.
/// The edge count is drawn as Binomial(C(n,2), p) and the open slots are
/// placed uniformly without replacement.
GraphState sample_er(std::size_t n, double p, CounterRng& rng);
GraphState sample_er(std::size_t n, double p, std::uint64_t seed);

/// One transition of the edge-Markovian chain.
struct EvolveResult {
  GraphState graph;
  std::vector<Edge> added;    // absent in the input, present in `graph`
  std::vector<Edge> removed;  // present in the input, absent in `graph`

  std::size_t change_count() const noexcept { return added.size() + removed.size(); }
};

/// Every present edge survives w.p. 1-q and every absent slot opens w.p. p,
/// independently. Runs in O(|E| + changes): the numbers of openings and
/// closings are binomial, and their positions are sampled without
/// replacement among absent slots / present edges.
EvolveResult evolve_step(const GraphState& g, const ModelParams& params, CounterRng& rng);

/// Serial reference: one Bernoulli draw per slot, O(n^2). Same law as
/// evolve_step, different random stream.
EvolveResult evolve_step_reference(const GraphState& g, const ModelParams& params, CounterRng& rng);

/// k distinct values from [0, range), sorted ascending (Floyd's algorithm).
std::vector<std::uint64_t> sample_without_replacement(std::uint64_t range, std::uint64_t k, CounterRng& rng);

/// Lazily generated trajectory (G_0, G_1, ...) of G(n, p, q).
///
/// G_t for t >= 1 is drawn from the substream derive_seed(seed, t), so the
/// sequence depends only on (params, seed, initial graph). Snapshots are
/// cached once generated.
class Trajectory {
 public:
  /// Substream id reserved for sampling G_0 ~ G(n, p~).
  static constexpr std::uint64_t kInitialStream = ~std::uint64_t{0};

  /// G_0 ~ G(n, p~). Throws std::domain_error when p = q = 0.
  Trajectory(ModelParams params, std::uint64_t seed);
  /// Explicit G_0; throws std::invalid_argument if its size differs from params.n.
  Trajectory(ModelParams params, std::uint64_t seed, GraphState initial);

  const GraphState& at(std::size_t t);
  /// Number of slots flipped between G_{t-1} and G_t (0 for t = 0).
  std::size_t changes(std::size_t t);
  std::span<const Edge> added(std::size_t t);
  std::span<const Edge> removed(std::size_t t);

  const ModelParams& params() const noexcept { return params_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool initial_sampled() const noexcept { return initial_sampled_; }
  std::size_t generated() const noexcept { return snapshots_.size(); }

  /// Hash over G_0..G_{t_max}; generates snapshots as needed.
  std::uint64_t fingerprint(std::size_t t_max);

 private:
  void extend_to(std::size_t t);

  ModelParams params_;
  std::uint64_t seed_;
  bool initial_sampled_;
  std::vector<GraphState> snapshots_;
  std::vector<std::vector<Edge>> added_;
  std::vector<std::vector<Edge>> removed_;
};

}  // namespace emwalk
