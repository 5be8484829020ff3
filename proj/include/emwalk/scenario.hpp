#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "emwalk/graph.hpp"
#include "emwalk/mixing.hpp"
#include "emwalk/model.hpp"

namespace emwalk {

std::string_view version() noexcept;

enum class Scenario { FastSparse, FastSemisparse, FastDense, SlowSparse, SlowSemisparse, SlowDense, Custom };

std::string_view to_string(Scenario s) noexcept;
/// Accepts the snake_case names ("fast_dense", ..., "custom").
std::optional<Scenario> parse_scenario(std::string_view name);

/// (p, q) of a preset at size n; `p` and `q` are used only for Custom.
///   fast_dense       p = 0.1, q = 0.5
///   fast_sparse      p = 1/n, q = 0.5
///   fast_semisparse  p~ = 3 ln n / n, q = 0.5
///   slow_dense       p~ = 1/2, q = ln n / (d n), p = q
///   slow_sparse      p = 1/n^2, q = 1/n
///   slow_semisparse  p~ = 2 ln n / n, q = ln n / (d n), so delta = ln n
/// where p = q p~ / (1 - p~) whenever p~ is the target.
ModelParams preset_params(Scenario s, std::size_t n, double p = 0.0, double q = 0.0);

/// Start selection text: "auto", "all", "isolated", "sample:K" or
/// "list:v1,v2,...". Throws std::invalid_argument otherwise.
StartSpec parse_starts(std::string_view text);

struct ScenarioConfig {
  Scenario scenario = Scenario::FastDense;
  std::size_t n = 256;
  double p = 0.0;  // Custom only
  double q = 0.0;  // Custom only
  std::size_t horizon = 200;
  std::size_t trials = 20;
  double eps = 0.05;
  std::size_t window = 0;  // 0 means ceil(sqrt(n))
  double confidence = 0.9;
  std::uint64_t seed = 1;
  std::string starts = "auto";
  /// Per-step Cheeger lower bound 1 - lambda2 in the series.
  bool spectral = false;
  /// Dump every k-th snapshot of trial 0 (0 disables).
  std::size_t dump_every = 0;
  /// Explicit G_0 for every trial instead of G(n, p~).
  std::optional<std::filesystem::path> g0;
  /// Series file format: "csv" or "json".
  std::string format = "csv";

  ModelParams model() const;
  MixingConfig mixing() const;
  /// Throws std::invalid_argument on inconsistent settings, including p = q = 0
  /// without an explicit G_0.
  void validate() const;
};

/// One row of the trial-0 series.
struct SeriesRow {
  std::size_t t = 0;
  std::size_t edges = 0;
  std::size_t changes = 0;
  double tv_max = 0.0;
  double l2pi_sq = 0.0;
  std::optional<double> phi_lb;
};

struct RunRecord {
  ScenarioConfig config;
  ModelParams params;
  RegimeMetrics regime;
  std::size_t window = 0;
  std::vector<SeriesRow> series;
  ModelMixingResult result;
  /// Leading steps of the trial-0 series with worst-start TV equal to 1.
  std::size_t tv_one_prefix = 0;
  double wall_seconds = 0.0;  // reported on stderr only, never in files
};

/// Runs cfg.trials trajectories (trial i uses seed derive_seed(cfg.seed, i)).
/// Trial 0 is propagated through the full horizon to fill the series; the
/// others stop once their mixing time is confirmed.
RunRecord run_scenario(const ScenarioConfig& cfg);

/// Number formatting shared by all outputs: shortest round-trip decimal,
/// "inf" / "-inf" / "na" for non-finite values.
std::string format_number(double x);

void write_series_csv(std::ostream& out, const RunRecord& record);
nlohmann::ordered_json series_json(const RunRecord& record);
nlohmann::ordered_json config_json(const ScenarioConfig& cfg);
nlohmann::ordered_json summary_json(const RunRecord& record);
/// One JSON object per line, ordered by trial index.
void write_trials_ndjson(std::ostream& out, const RunRecord& record);

/// Writes series.{csv|json}, summary.json and trials.ndjson into `dir`
/// (created if missing). Throws std::runtime_error on I/O failure.
void write_outputs(const RunRecord& record, const std::filesystem::path& dir);

/// Saves G_t of trial 0 for every t in t_list as dir/g_<t>.txt.
std::vector<std::filesystem::path> dump_trajectory(const ScenarioConfig& cfg, std::span<const std::size_t> t_list,
                                                   const std::filesystem::path& dir);

/// Inverse of config_json; throws std::invalid_argument on unknown scenarios.
ScenarioConfig config_from_json(const nlohmann::json& j);

}  // namespace emwalk
