#include "emwalk/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "emwalk/rng.hpp"
#include "emwalk/walk.hpp"

namespace emwalk {
namespace {

constexpr std::uint64_t kStartStream = 0x57a27ULL;

double max_of(const std::vector<double>& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, x);
  return best;
}

}  // namespace

std::size_t MixingConfig::window_for(std::size_t n) const {
  if (window > 0) return window;
  return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

void MixingConfig::validate(std::size_t n) const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(confidence > 0.0 && confidence <= 1.0)) throw std::invalid_argument("confidence must lie in (0, 1]");
  if (horizon < window_for(n)) throw std::invalid_argument("horizon must be at least the window");
}

std::vector<Vertex> resolve_starts(const StartSpec& spec, std::size_t n, std::uint64_t trajectory_seed) {
  std::vector<Vertex> all(n);
  for (Vertex x = 0; x < n; ++x) all[x] = x;
  switch (spec.mode) {
    case StartSpec::Mode::All:
      return all;
    case StartSpec::Mode::Explicit:
      for (Vertex x : spec.vertices) {
        if (x >= n) throw std::out_of_range("start vertex outside vertex range");
      }
      return spec.vertices;
    case StartSpec::Mode::Isolated:
      throw std::invalid_argument("isolated starts need the initial graph");
    case StartSpec::Mode::Auto:
      if (n <= spec.exhaustive_limit) return all;
      [[fallthrough]];
    case StartSpec::Mode::Sample: {
      if (spec.sample_size >= n) return all;
      CounterRng rng(derive_seed(trajectory_seed, kStartStream));
      // Partial Fisher-Yates.
      for (std::size_t i = 0; i < spec.sample_size; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(all[i], all[j]);
      }
      all.resize(spec.sample_size);
      std::sort(all.begin(), all.end());
      return all;
    }
  }
  return all;
}

std::vector<Vertex> resolve_starts(const StartSpec& spec, const GraphState& g0, std::uint64_t trajectory_seed) {
  if (spec.mode != StartSpec::Mode::Isolated) return resolve_starts(spec, g0.vertex_count(), trajectory_seed);
  std::vector<Vertex> isolated;
  for (Vertex x = 0; x < g0.vertex_count(); ++x) {
    if (g0.degree(x) == 0) isolated.push_back(x);
  }
  if (!isolated.empty()) return isolated;
  StartSpec fallback = spec;
  fallback.mode = StartSpec::Mode::Auto;
  return resolve_starts(fallback, g0.vertex_count(), trajectory_seed);
}

std::optional<std::size_t> first_persistent_run(const std::vector<double>& series, double eps, std::size_t window) {
  std::optional<std::size_t> run_start;
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s] <= eps) {
      if (!run_start) run_start = s;
      if (s - *run_start >= window) return run_start;
    } else {
      run_start.reset();
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> static_mixing_time(const GraphState& g, double eps, WalkKind kind, std::size_t max_steps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!g.is_connected()) return std::nullopt;
  const std::size_t n = g.vertex_count();
  const auto pi = stationary_dist(g).pi;
  std::vector<Vertex> starts(n);
  for (Vertex x = 0; x < n; ++x) starts[x] = x;
  DistributionBatch batch(n, starts);
  for (std::size_t t = 0; t <= max_steps; ++t) {
    if (t > 0) batch.step(g, kind);
    if (max_of(batch.tv_to(pi.values())) <= eps) return t;
  }
  return std::nullopt;
}

MixingReport dynamic_mixing_time(Trajectory& traj, const MixingConfig& cfg) {
  const std::size_t n = traj.params().n;
  cfg.validate(n);
  MixingReport report;
  report.window = cfg.window_for(n);
  report.eps = cfg.eps;
  report.convention = std::string(kIndexingConvention);
  report.starts = resolve_starts(cfg.starts, traj.at(0), traj.seed());
  report.starts_sampled = report.starts.size() < n && (cfg.starts.mode == StartSpec::Mode::Sample ||
                                                       cfg.starts.mode == StartSpec::Mode::Auto);

  DistributionBatch batch(n, report.starts);
  std::optional<std::size_t> run_start;
  for (std::size_t s = 0; s <= cfg.horizon; ++s) {
    const GraphState& g = traj.at(s);
    if (s > 0) batch.step(g, cfg.kind);
    const auto pi = stationary_dist(g).pi;
    const double tv = max_of(batch.tv_to(pi.values()));
    report.tv_max.push_back(tv);
    report.l2pi_sq_max.push_back(max_of(batch.l2pi_sq_to(pi.values())));
    if (tv <= cfg.eps) {
      if (!run_start) run_start = s;
      if (!report.t_mix && s - *run_start >= report.window) {
        report.t_mix = run_start;
        if (cfg.early_exit) break;
      }
    } else {
      run_start.reset();
    }
  }
  return report;
}

ModelMixingResult model_mixing_time(const ModelParams& params, const MixingConfig& cfg, std::uint64_t master_seed,
                                    const TrajectoryFactory& factory) {
  if (cfg.trials == 0) throw std::invalid_argument("model mixing time needs at least one trial");
  cfg.validate(params.n);
  ModelMixingResult result;
  result.per_trial.resize(cfg.trials);
  result.seeds.resize(cfg.trials);
  for (std::size_t i = 0; i < cfg.trials; ++i) result.seeds[i] = derive_seed(master_seed, i);

  std::exception_ptr failure;
  const auto trials = static_cast<std::ptrdiff_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < trials; ++i) {
    try {
      const auto idx = static_cast<std::size_t>(i);
      Trajectory traj = factory ? factory(result.seeds[idx]) : Trajectory(params, result.seeds[idx]);
      result.per_trial[idx] = dynamic_mixing_time(traj, cfg).t_mix;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize_trials(std::move(result.per_trial), std::move(result.seeds), cfg.confidence);
}

ModelMixingResult summarize_trials(std::vector<std::optional<std::size_t>> per_trial, std::vector<std::uint64_t> seeds,
                                   double confidence) {
  if (per_trial.empty()) throw std::invalid_argument("no trials to summarize");
  ModelMixingResult result;
  std::vector<std::size_t> finite;
  for (const auto& t : per_trial) {
    if (t) finite.push_back(*t);
  }
  std::sort(finite.begin(), finite.end());
  const auto trials = static_cast<double>(per_trial.size());
  result.mixed_fraction = static_cast<double>(finite.size()) / trials;
  const auto needed = static_cast<std::size_t>(std::ceil(confidence * trials - 1e-9));
  if (needed >= 1 && finite.size() >= needed) result.t = finite[needed - 1];
  result.per_trial = std::move(per_trial);
  result.seeds = std::move(seeds);
  return result;
}

std::vector<double> coarse_mixing_stat(Trajectory& traj, std::size_t t_lo, std::size_t t_hi, Vertex start,
                                       WalkKind kind) {
  if (t_lo > t_hi) throw std::invalid_argument("empty time range");
  const std::size_t n = traj.params().n;
  const Vertex starts[] = {start};
  DistributionBatch batch(n, starts);
  std::vector<double> series;
  series.reserve(t_hi - t_lo + 1);
  for (std::size_t t = 0; t <= t_hi; ++t) {
    const GraphState& g = traj.at(t);
    if (t > 0) batch.step(g, kind);
    if (t >= t_lo) series.push_back(batch.l2pi_sq_to(stationary_dist(g).pi.values())[0]);
  }
  return series;
}

NonmixingReport nonmixing_witness(Trajectory& traj, const MixingConfig& cfg, std::size_t t_lo, std::size_t t_hi,
                                  double floor) {
  if (t_lo > t_hi) throw std::invalid_argument("empty time range");
  const std::size_t n = traj.params().n;
  NonmixingReport report;
  report.t_lo = t_lo;
  report.t_hi = t_hi;
  report.floor = floor;
  report.starts = resolve_starts(cfg.starts, traj.at(0), traj.seed());

  DistributionBatch batch(n, report.starts);
  for (std::size_t t = 0; t <= t_hi; ++t) {
    const GraphState& g = traj.at(t);
    if (t > 0) batch.step(g, cfg.kind);
    if (t >= t_lo) report.tv_max.push_back(max_of(batch.tv_to(stationary_dist(g).pi.values())));
  }
  std::size_t above = 0;
  double running_min = report.tv_max.front();
  for (double tv : report.tv_max) {
    above += tv >= floor;
    running_min = std::min(running_min, tv);
    report.max_rebound = std::max(report.max_rebound, tv - running_min);
  }
  report.fraction_at_or_above_floor = static_cast<double>(above) / static_cast<double>(report.tv_max.size());
  return report;
}

}  // namespace emwalk
