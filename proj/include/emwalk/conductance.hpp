#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "emwalk/evolution.hpp"
#include "emwalk/graph.hpp"
#include "emwalk/spectral.hpp"

namespace emwalk {

/// Boundary and volume of a vertex set S.
struct CutStats {
  std::size_t set_size = 0;
  std::size_t boundary = 0;  // |E(S, V \ S)|
  std::size_t volume = 0;    // sum of deg(x) over x in S
  double phi = 0.0;          // boundary / volume

  friend bool operator==(const CutStats&, const CutStats&) = default;
};

/// Throws std::domain_error for an empty set or a set of zero volume, and
/// std::invalid_argument for repeated or out-of-range vertices.
CutStats cut_stats(const GraphState& g, std::span<const Vertex> s);

struct ConductanceResult {
  double phi = 0.0;
  std::vector<Vertex> argmin;  // empty when the graph has no edges
};

/// Minimum of boundary/volume over connected S with 1 <= vol(S) <= vol(V)/2.
/// A disconnected minimiser splits into components that are each at least
/// as good, so restricting to connected sets loses nothing.
/// Throws std::domain_error when g has more than max_vertices vertices.
ConductanceResult conductance_exact(const GraphState& g, std::size_t max_vertices = 20);

/// Visits every vertex set of size k that induces a connected subgraph,
/// exactly once, as a sorted vertex list. Rooted growth from the minimum
/// vertex (ESU-style extension sets) rules out duplicates. The visitor
/// returns false to stop early.
void for_each_connected_set(const GraphState& g, std::size_t k,
                            const std::function<bool(std::span<const Vertex>)>& visit);

std::vector<std::vector<Vertex>> enumerate_connected_sets(const GraphState& g, std::size_t k);
std::uint64_t count_connected_sets(const GraphState& g, std::size_t k);

/// Exact (boundary, volume) of S at t = 0..t_max, maintained from the
/// flipped slots of each step rather than recomputed.
std::vector<CutStats> track_cut_trajectory(Trajectory& traj, std::span<const Vertex> s, std::size_t t_max);

enum class PhiMode { ExactSmallN, SpectralLowerBound };

/// Phi(G_t) for t = 0..t_max: exact (n <= 20) or the Cheeger lower bound
/// 1 - lambda2(P_t).
std::vector<double> phi_preservation_experiment(Trajectory& traj, std::size_t t_max, PhiMode mode);

enum class Verdict { Pass, Fail, Heuristic, Inconclusive };
std::string_view to_string(Verdict v) noexcept;

/// Finite stand-ins for the constants of the slow-dense mixing assumptions.
struct AssumptionConfig {
  double degree_low = 0.5;   // (1): deg_0(x) >= degree_low * d
  double degree_high = 1.5;  //      deg_0(x) <= degree_high * d
  double small_set_log_factor = 1.0;     // (2): |S| <= c1 ln n
  double boundary_log_factor = 1.0;      // (2): |E_0(S)| >= c2 ln n |S|
  std::size_t exact_set_size = 3;        // (2): exhaustive for |S| <= this
  std::size_t sampled_sets = 2000;       // (2): random connected sets beyond
  double conductance_factor = 1.0;       // (3): Phi >= c3 ln d / d
  std::size_t exact_conductance_limit = 20;
  std::uint64_t seed = 0x7a3;
};

struct AssumptionReport {
  std::size_t min_deg = 0;
  std::size_t max_deg = 0;
  Verdict degrees = Verdict::Fail;

  Verdict small_sets = Verdict::Fail;
  double worst_small_set_ratio = 0.0;  // min |E(S)| / (c2 ln n |S|) seen
  std::size_t small_sets_checked = 0;

  Verdict conductance = Verdict::Fail;
  double phi_estimate = 0.0;  // exact Phi or its Cheeger lower bound
  bool phi_exact = false;
  double phi_threshold = 0.0;

  AssumptionConfig config;

  /// No assumption failed and none was inconclusive.
  bool passes() const noexcept;
};

AssumptionReport check_slow_dense_assumptions(const GraphState& g0, double d, const AssumptionConfig& config = {});

}  // namespace emwalk
