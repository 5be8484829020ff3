#include "emwalk/scenario.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "emwalk/evolution.hpp"
#include "emwalk/rng.hpp"
#include "emwalk/snapshot_io.hpp"
#include "emwalk/spectral.hpp"
#include "emwalk/walk.hpp"

#ifndef EMWALK_VERSION
#define EMWALK_VERSION "unknown"
#endif

namespace emwalk {
namespace {

constexpr std::pair<Scenario, std::string_view> kScenarioNames[] = {
    {Scenario::FastSparse, "fast_sparse"},   {Scenario::FastSemisparse, "fast_semisparse"},
    {Scenario::FastDense, "fast_dense"},     {Scenario::SlowSparse, "slow_sparse"},
    {Scenario::SlowSemisparse, "slow_semisparse"}, {Scenario::SlowDense, "slow_dense"},
    {Scenario::Custom, "custom"},
};

// p such that p / (p + q) = p_tilde.
double p_for_target(double p_tilde, double q) { return q * p_tilde / (1.0 - p_tilde); }

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  std::size_t pos = 0;
  const std::string s(text);
  try {
    value = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size() || s.front() == '-') {
    throw std::invalid_argument(fmt::format("invalid {} '{}'", what, s));
  }
  return value;
}

nlohmann::ordered_json number_or_token(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

nlohmann::ordered_json optional_count(const std::optional<std::size_t>& t) {
  if (t) return *t;
  return nullptr;
}

GraphState initial_graph(const ScenarioConfig& cfg) {
  GraphState g = load_snapshot(*cfg.g0).graph;
  if (g.vertex_count() != cfg.n) {
    throw std::invalid_argument(fmt::format("G_0 has {} vertices, config says n = {}", g.vertex_count(), cfg.n));
  }
  return g;
}

Trajectory make_trajectory(const ModelParams& params, std::uint64_t seed, const std::optional<GraphState>& g0) {
  if (g0) return Trajectory(params, seed, *g0);
  return Trajectory(params, seed);
}

void open_or_throw(std::ofstream& out, const std::filesystem::path& path) {
  out.open(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void close_or_throw(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string_view version() noexcept { return EMWALK_VERSION; }

std::string_view to_string(Scenario s) noexcept {
  for (const auto& [value, name] : kScenarioNames) {
    if (value == s) return name;
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const auto& [value, candidate] : kScenarioNames) {
    if (candidate == name) return value;
  }
  return std::nullopt;
}

ModelParams preset_params(Scenario s, std::size_t n, double p, double q) {
  if (s != Scenario::Custom && n < 3) throw std::invalid_argument("presets need n >= 3");
  const double nn = static_cast<double>(n);
  const double ln_n = std::log(nn);
  switch (s) {
    case Scenario::FastDense:
      return ModelParams::make(n, 0.1, 0.5);
    case Scenario::FastSparse:
      return ModelParams::make(n, 1.0 / nn, 0.5);
    case Scenario::FastSemisparse: {
      const double p_tilde = std::min(0.5, 3.0 * ln_n / nn);
      return ModelParams::make(n, p_for_target(p_tilde, 0.5), 0.5);
    }
    case Scenario::SlowDense: {
      const double d = (nn - 1.0) * 0.5;
      const double rate = ln_n / (d * nn);
      return ModelParams::make(n, rate, rate);
    }
    case Scenario::SlowSparse:
      return ModelParams::make(n, 1.0 / (nn * nn), 1.0 / nn);
    case Scenario::SlowSemisparse: {
      const double p_tilde = std::min(0.5, 2.0 * ln_n / nn);
      const double d = (nn - 1.0) * p_tilde;
      const double rate = ln_n / (d * nn);
      return ModelParams::make(n, p_for_target(p_tilde, rate), rate);
    }
    case Scenario::Custom:
      return ModelParams::make(n, p, q);
  }
  throw std::invalid_argument("unknown scenario");
}

StartSpec parse_starts(std::string_view text) {
  StartSpec spec;
  if (text == "auto") return spec;
  if (text == "all") {
    spec.mode = StartSpec::Mode::All;
    return spec;
  }
  if (text == "isolated") {
    spec.mode = StartSpec::Mode::Isolated;
    return spec;
  }
  if (text.starts_with("sample:")) {
    spec.mode = StartSpec::Mode::Sample;
    spec.sample_size = parse_count(text.substr(7), "sample size");
    if (spec.sample_size == 0) throw std::invalid_argument("sample size must be positive");
    return spec;
  }
  if (text.starts_with("list:")) {
    spec.mode = StartSpec::Mode::Explicit;
    std::string_view rest = text.substr(5);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = rest.substr(0, comma);
      const auto v = parse_count(item, "start vertex");
      if (v > std::numeric_limits<Vertex>::max()) throw std::invalid_argument("start vertex out of range");
      spec.vertices.push_back(static_cast<Vertex>(v));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (spec.vertices.empty()) throw std::invalid_argument("empty start list");
    return spec;
  }
  throw std::invalid_argument(fmt::format("invalid starts '{}'", text));
}

ModelParams ScenarioConfig::model() const { return preset_params(scenario, n, p, q); }

MixingConfig ScenarioConfig::mixing() const {
  MixingConfig m;
  m.eps = eps;
  m.window = window;
  m.horizon = horizon;
  m.starts = parse_starts(starts);
  m.trials = trials;
  m.confidence = confidence;
  return m;
}

void ScenarioConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
  const ModelParams params = model();
  if (params.p == 0.0 && params.q == 0.0 && !g0) {
    throw std::invalid_argument("p = q = 0 has no stationary edge density; supply an explicit G_0");
  }
  const MixingConfig m = mixing();
  m.validate(n);
  for (Vertex x : m.starts.vertices) {
    if (x >= n) throw std::invalid_argument("start vertex outside vertex range");
  }
}

RunRecord run_scenario(const ScenarioConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  RunRecord record;
  record.config = cfg;
  record.params = cfg.model();
  record.regime = regime_metrics(record.params);
  const MixingConfig mixing = cfg.mixing();
  record.window = mixing.window_for(cfg.n);

  std::optional<GraphState> g0;
  if (cfg.g0) g0 = initial_graph(cfg);

  std::vector<std::uint64_t> seeds(cfg.trials);
  for (std::size_t i = 0; i < cfg.trials; ++i) seeds[i] = derive_seed(cfg.seed, i);
  std::vector<std::optional<std::size_t>> per_trial(cfg.trials);

  std::exception_ptr failure;
  const auto trials = static_cast<std::ptrdiff_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < trials; ++i) {
    try {
      const auto idx = static_cast<std::size_t>(i);
      Trajectory traj = make_trajectory(record.params, seeds[idx], g0);
      MixingConfig trial_cfg = mixing;
      trial_cfg.early_exit = idx != 0;
      const MixingReport report = dynamic_mixing_time(traj, trial_cfg);
      per_trial[idx] = report.t_mix;
      if (idx == 0) {
        record.series.resize(report.tv_max.size());
        for (std::size_t t = 0; t < report.tv_max.size(); ++t) {
          SeriesRow& row = record.series[t];
          const GraphState& g = traj.at(t);
          row.t = t;
          row.edges = g.edge_count();
          row.changes = traj.changes(t);
          row.tv_max = report.tv_max[t];
          row.l2pi_sq = report.l2pi_sq_max[t];
          if (cfg.spectral) row.phi_lb = cheeger_lower_bound(g);
        }
      }
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  record.result = summarize_trials(std::move(per_trial), std::move(seeds), cfg.confidence);
  for (const auto& row : record.series) {
    if (row.tv_max < 1.0 - 1e-12) break;
    ++record.tv_one_prefix;
  }
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "na";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

void write_series_csv(std::ostream& out, const RunRecord& record) {
  out << "t,edges,changes,tv_max,l2pi_sq,phi_lb\n";
  for (const auto& row : record.series) {
    out << row.t << ',' << row.edges << ',' << row.changes << ',' << format_number(row.tv_max) << ','
        << format_number(row.l2pi_sq) << ',' << (row.phi_lb ? format_number(*row.phi_lb) : "na") << '\n';
  }
}

nlohmann::ordered_json series_json(const RunRecord& record) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : record.series) {
    rows.push_back({{"t", row.t},
                    {"edges", row.edges},
                    {"changes", row.changes},
                    {"tv_max", number_or_token(row.tv_max)},
                    {"l2pi_sq", number_or_token(row.l2pi_sq)},
                    {"phi_lb", row.phi_lb ? number_or_token(*row.phi_lb) : nlohmann::ordered_json("na")}});
  }
  return rows;
}

nlohmann::ordered_json config_json(const ScenarioConfig& cfg) {
  return {{"scenario", to_string(cfg.scenario)},
          {"n", cfg.n},
          {"p", cfg.p},
          {"q", cfg.q},
          {"horizon", cfg.horizon},
          {"trials", cfg.trials},
          {"eps", cfg.eps},
          {"window", cfg.window},
          {"confidence", cfg.confidence},
          {"seed", cfg.seed},
          {"starts", cfg.starts},
          {"spectral", cfg.spectral},
          {"dump_every", cfg.dump_every},
          {"g0", cfg.g0 ? nlohmann::ordered_json(cfg.g0->string()) : nlohmann::ordered_json(nullptr)},
          {"format", cfg.format}};
}

ScenarioConfig config_from_json(const nlohmann::json& j) {
  ScenarioConfig cfg;
  const auto name = j.at("scenario").get<std::string>();
  const auto scenario = parse_scenario(name);
  if (!scenario) throw std::invalid_argument("unknown scenario '" + name + "'");
  cfg.scenario = *scenario;
  cfg.n = j.at("n").get<std::size_t>();
  cfg.p = j.at("p").get<double>();
  cfg.q = j.at("q").get<double>();
  cfg.horizon = j.at("horizon").get<std::size_t>();
  cfg.trials = j.at("trials").get<std::size_t>();
  cfg.eps = j.at("eps").get<double>();
  cfg.window = j.at("window").get<std::size_t>();
  cfg.confidence = j.at("confidence").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.starts = j.at("starts").get<std::string>();
  cfg.spectral = j.at("spectral").get<bool>();
  cfg.dump_every = j.at("dump_every").get<std::size_t>();
  if (!j.at("g0").is_null()) cfg.g0 = j.at("g0").get<std::string>();
  cfg.format = j.at("format").get<std::string>();
  return cfg;
}

nlohmann::ordered_json summary_json(const RunRecord& record) {
  const RegimeThresholds thresholds;
  const auto& m = record.regime;
  auto per_trial = nlohmann::ordered_json::array();
  for (const auto& t : record.result.per_trial) per_trial.push_back(optional_count(t));
  return {{"config", config_json(record.config)},
          {"params",
           {{"n", record.params.n},
            {"p", record.params.p},
            {"q", record.params.q},
            {"p_tilde", m.p_tilde},
            {"expected_degree", m.d},
            {"expected_changes", m.delta}}},
          {"regime",
           {{"density", to_string(m.label.density)},
            {"churn", to_string(m.label.churn)},
            {"thresholds",
             {{"sparse_log_factor", thresholds.sparse_log_factor},
              {"dense_log_factor", thresholds.dense_log_factor},
              {"fast_divisor", thresholds.fast_divisor},
              {"slow_log_factor", thresholds.slow_log_factor}}}}},
          {"window", record.window},
          {"t_mix", optional_count(record.result.t)},
          {"verdict", record.result.t ? "mixed" : "not mixed by horizon"},
          {"mixed_fraction", record.result.mixed_fraction},
          {"seeds", record.result.seeds},
          {"per_trial", per_trial},
          {"tv_one_prefix", record.tv_one_prefix},
          {"convention", kIndexingConvention},
          {"version", version()}};
}

void write_trials_ndjson(std::ostream& out, const RunRecord& record) {
  for (std::size_t i = 0; i < record.result.per_trial.size(); ++i) {
    const auto& t = record.result.per_trial[i];
    const nlohmann::ordered_json line = {
        {"trial", i}, {"seed", record.result.seeds[i]}, {"t_mix", optional_count(t)}, {"mixed", t.has_value()}};
    out << line.dump() << '\n';
  }
}

void write_outputs(const RunRecord& record, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::ofstream out;
  if (record.config.format == "csv") {
    const auto path = dir / "series.csv";
    open_or_throw(out, path);
    write_series_csv(out, record);
    close_or_throw(out, path);
  } else {
    const auto path = dir / "series.json";
    open_or_throw(out, path);
    out << series_json(record).dump(2) << '\n';
    close_or_throw(out, path);
  }
  {
    const auto path = dir / "summary.json";
    open_or_throw(out, path);
    out << summary_json(record).dump(2) << '\n';
    close_or_throw(out, path);
  }
  {
    const auto path = dir / "trials.ndjson";
    open_or_throw(out, path);
    write_trials_ndjson(out, record);
    close_or_throw(out, path);
  }
  if (record.config.dump_every > 0) {
    std::vector<std::size_t> ts;
    for (std::size_t t = 0; t <= record.config.horizon; t += record.config.dump_every) ts.push_back(t);
    dump_trajectory(record.config, ts, dir / "snapshots");
  }
}

std::vector<std::filesystem::path> dump_trajectory(const ScenarioConfig& cfg, std::span<const std::size_t> t_list,
                                                   const std::filesystem::path& dir) {
  const ModelParams params = cfg.model();
  if (params.p == 0.0 && params.q == 0.0 && !cfg.g0) {
    throw std::invalid_argument("p = q = 0 has no stationary edge density; supply an explicit G_0");
  }
  std::optional<GraphState> g0;
  if (cfg.g0) g0 = initial_graph(cfg);
  const std::uint64_t seed = derive_seed(cfg.seed, 0);
  Trajectory traj = make_trajectory(params, seed, g0);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (std::size_t t : t_list) {
    auto path = dir / fmt::format("g_{}.txt", t);
    save_snapshot(path, traj.at(t), t, seed);
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace emwalk
