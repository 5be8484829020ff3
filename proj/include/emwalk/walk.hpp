#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "emwalk/distribution.hpp"
#include "emwalk/evolution.hpp"
#include "emwalk/graph.hpp"
#include "emwalk/kernels.hpp"

namespace emwalk {

/// Step-indexing convention of every propagation in this library:
/// mu_t = mu_{t-1} P_t, where P_t is the walk on snapshot G_t.
inline constexpr std::string_view kIndexingConvention = "mu_t=mu_{t-1}*P(G_t)";

struct StationaryResult {
  Distribution pi;
  /// True when the graph has no edges; pi is then uniform by convention.
  bool degenerate = false;
};

/// Canonical stationary distribution deg(x) / 2|E|.
StationaryResult stationary_dist(const GraphState& g);

Distribution step(const Distribution& mu, const GraphState& g, WalkKind kind);

using StepProbe = std::function<void(std::size_t t, const Distribution& mu, const GraphState& g)>;

/// mu_t = mu_0 P_1 ... P_t on the trajectory; calls probe(t, mu_t, G_t) for
/// 1 <= t <= t_max. Renormalises whenever the mass drifts by more than
/// Distribution::kRenormalizeThreshold.
Distribution propagate(Distribution mu0, Trajectory& traj, std::size_t t_max, WalkKind kind,
                       const StepProbe& probe = {});

double tv_distance(std::span<const double> f, std::span<const double> g);
double tv_distance(const Distribution& f, const Distribution& g);

/// ||mu/pi - 1||_{2,pi} = sqrt(sum (mu - pi)^2 / pi). Returns +infinity when
/// mu puts mass on a state with pi = 0.
double l2pi_distance(std::span<const double> mu, std::span<const double> pi);
double l2pi_distance(const Distribution& mu, const Distribution& pi);

/// Several walks (one row per start) advanced together.
class DistributionBatch {
 public:
  DistributionBatch(std::size_t n, std::span<const Vertex> starts);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t n() const noexcept { return n_; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return data_; }

  void step(const GraphState& g, WalkKind kind);
  /// TV of every row to `target`.
  std::vector<double> tv_to(std::span<const double> target) const;
  /// Squared l2(pi) distance of every row to `pi` (+inf where undefined).
  std::vector<double> l2pi_sq_to(std::span<const double> pi) const;

 private:
  std::size_t n_;
  std::size_t rows_;
  std::vector<double> data_;
  std::vector<double> scratch_;
};

}  // namespace emwalk
