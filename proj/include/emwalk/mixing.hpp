#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "emwalk/evolution.hpp"
#include "emwalk/graph.hpp"
#include "emwalk/kernels.hpp"
#include "emwalk/model.hpp"

namespace emwalk {

/// Which start vertices the worst-case distances range over.
struct StartSpec {
  /// Isolated: the isolated vertices of G_0 (Auto when there are none).
  enum class Mode { Auto, All, Sample, Explicit, Isolated };
  Mode mode = Mode::Auto;
  std::size_t sample_size = 20;      // Sample, and Auto above exhaustive_limit
  std::size_t exhaustive_limit = 256;  // Auto: all starts up to this n
  std::vector<Vertex> vertices;      // Explicit
};

/// Finite-n settings of the mixing definitions. eps replaces "o(1)", window
/// the sqrt(n) persistence requirement, confidence the "1 - o(1)" fraction.
struct MixingConfig {
  double eps = 0.05;
  std::size_t window = 0;  // 0 means ceil(sqrt(n))
  std::size_t horizon = 200;
  StartSpec starts;
  std::size_t trials = 20;
  double confidence = 0.9;
  WalkKind kind = WalkKind::Lazy;
  /// Stop propagating once a mixing time has been confirmed over its window.
  bool early_exit = true;

  std::size_t window_for(std::size_t n) const;
  /// Throws std::invalid_argument on eps outside (0,1), confidence outside
  /// (0,1] or horizon < window.
  void validate(std::size_t n) const;
};

/// Picks the start vertices for one trajectory; sampling draws from the
/// trajectory-specific stream so results do not depend on evaluation order.
/// Throws std::invalid_argument for Mode::Isolated, which needs G_0.
std::vector<Vertex> resolve_starts(const StartSpec& spec, std::size_t n, std::uint64_t trajectory_seed);
std::vector<Vertex> resolve_starts(const StartSpec& spec, const GraphState& g0, std::uint64_t trajectory_seed);

struct MixingReport {
  std::optional<std::size_t> t_mix;  // nullopt: not mixed by the horizon
  std::vector<double> tv_max;        // max over starts of TV(mu_s^x, pi_s), s = 0..
  std::vector<double> l2pi_sq_max;   // max over starts of ||mu_s^x/pi_s - 1||^2
  std::vector<Vertex> starts;
  bool starts_sampled = false;
  std::size_t window = 0;
  double eps = 0.0;
  std::string convention;
};

/// Smallest t with max_x TV(mu_t^x, pi) <= eps on a static graph, by exact
/// propagation from every start; nullopt for a disconnected graph or when
/// max_steps is exceeded.
std::optional<std::size_t> static_mixing_time(const GraphState& g, double eps, WalkKind kind = WalkKind::Lazy,
                                              std::size_t max_steps = 1000000);

/// Smallest t <= horizon - window such that TV(mu_s^x, pi_s) <= eps for all
/// s in [t, t + window] and every configured start x.
MixingReport dynamic_mixing_time(Trajectory& traj, const MixingConfig& cfg);

/// Earliest start of a run of window + 1 consecutive values <= eps.
std::optional<std::size_t> first_persistent_run(const std::vector<double>& series, double eps, std::size_t window);

struct ModelMixingResult {
  std::optional<std::size_t> t;
  double mixed_fraction = 0.0;  // trials mixed within the horizon
  std::vector<std::optional<std::size_t>> per_trial;
  std::vector<std::uint64_t> seeds;
};

/// Aggregates per-trial mixing times: t is the k-th smallest finite value with
/// k = ceil(confidence * trials), or nullopt if fewer than k trials mixed.
ModelMixingResult summarize_trials(std::vector<std::optional<std::size_t>> per_trial, std::vector<std::uint64_t> seeds,
                                   double confidence);

using TrajectoryFactory = std::function<Trajectory(std::uint64_t trial_seed)>;

/// Runs cfg.trials independent trajectories (G_0 ~ G(n, p~) unless a factory
/// is given) and returns the smallest t reached by at least a confidence
/// fraction of them.
ModelMixingResult model_mixing_time(const ModelParams& params, const MixingConfig& cfg, std::uint64_t master_seed,
                                    const TrajectoryFactory& factory = {});

/// ||mu_t/pi_t - 1||^2_{2,pi_t} for t in [t_lo, t_hi] from a single start;
/// +inf where mu_t has mass outside the support of pi_t.
std::vector<double> coarse_mixing_stat(Trajectory& traj, std::size_t t_lo, std::size_t t_hi, Vertex start,
                                       WalkKind kind = WalkKind::Lazy);

struct NonmixingReport {
  std::size_t t_lo = 0;
  std::size_t t_hi = 0;
  double floor = 0.0;
  std::vector<double> tv_max;  // over [t_lo, t_hi]
  double fraction_at_or_above_floor = 0.0;
  /// Largest rise of tv_max above an earlier minimum inside the range.
  double max_rebound = 0.0;
  std::vector<Vertex> starts;
};

NonmixingReport nonmixing_witness(Trajectory& traj, const MixingConfig& cfg, std::size_t t_lo, std::size_t t_hi,
                                  double floor);

}  // namespace emwalk
