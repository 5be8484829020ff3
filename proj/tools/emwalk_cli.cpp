// Command-line runner for edge-Markovian random walk experiments.
//
//   emwalk run  --scenario fast_dense --n 256 --seed 7 --out results/
//   emwalk run  --config results/summary.json --out rerun/
//   emwalk dump --scenario slow_sparse --n 500 --t 0,10,50 --out snaps/
//   emwalk inspect snaps/g_10.txt

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "emwalk/conductance.hpp"
#include "emwalk/scenario.hpp"
#include "emwalk/snapshot_io.hpp"
#include "emwalk/spectral.hpp"

namespace {

struct CliConfig {
  std::string scenario = "fast_dense";
  std::string config_path;
  std::string g0;
  emwalk::ScenarioConfig cfg;
};

void add_scenario_options(CLI::App& cmd, CliConfig& c) {
  auto& cfg = c.cfg;
  cmd.add_option("--scenario", c.scenario,
                 "fast_sparse | fast_semisparse | fast_dense | slow_sparse | slow_semisparse | slow_dense | custom")
      ->capture_default_str();
  cmd.add_option("--config", c.config_path, "Re-run from the config echo of a summary.json (flags override it)");
  cmd.add_option("--n", cfg.n, "Number of vertices")->capture_default_str();
  cmd.add_option("--p", cfg.p, "Edge birth probability (custom scenario)");
  cmd.add_option("--q", cfg.q, "Edge death probability (custom scenario)");
  cmd.add_option("--horizon", cfg.horizon, "Last step propagated")->capture_default_str();
  cmd.add_option("--trials", cfg.trials, "Independent trajectories")->capture_default_str();
  cmd.add_option("--eps", cfg.eps, "TV threshold")->capture_default_str();
  cmd.add_option("--window", cfg.window, "Persistence window (0: ceil(sqrt(n)))")->capture_default_str();
  cmd.add_option("--confidence", cfg.confidence, "Fraction of trials that must mix")->capture_default_str();
  cmd.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  cmd.add_option("--starts", cfg.starts, "auto | all | isolated | sample:K | list:v1,v2,...")->capture_default_str();
  cmd.add_option("--g0", c.g0, "Initial graph snapshot used by every trial");
  cmd.add_option("--format", cfg.format, "Series format: csv | json")->capture_default_str();
  cmd.add_flag("--spectral", cfg.spectral, "Add the per-step Cheeger lower bound to the series");
  cmd.add_option("--dump-every", cfg.dump_every, "Dump every k-th snapshot of trial 0")->capture_default_str();
}

// Flags given on the command line win over the loaded config echo.
emwalk::ScenarioConfig resolve(const CLI::App& cmd, const CliConfig& c) {
  emwalk::ScenarioConfig cfg = c.cfg;
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw std::runtime_error("cannot read " + c.config_path);
    const auto doc = nlohmann::json::parse(in);
    emwalk::ScenarioConfig loaded = emwalk::config_from_json(doc.contains("config") ? doc.at("config") : doc);
    const auto given = [&](const char* name) { return cmd.count(name) > 0; };
    if (!given("--n")) cfg.n = loaded.n;
    if (!given("--p")) cfg.p = loaded.p;
    if (!given("--q")) cfg.q = loaded.q;
    if (!given("--horizon")) cfg.horizon = loaded.horizon;
    if (!given("--trials")) cfg.trials = loaded.trials;
    if (!given("--eps")) cfg.eps = loaded.eps;
    if (!given("--window")) cfg.window = loaded.window;
    if (!given("--confidence")) cfg.confidence = loaded.confidence;
    if (!given("--seed")) cfg.seed = loaded.seed;
    if (!given("--starts")) cfg.starts = loaded.starts;
    if (!given("--format")) cfg.format = loaded.format;
    if (!given("--spectral")) cfg.spectral = loaded.spectral;
    if (!given("--dump-every")) cfg.dump_every = loaded.dump_every;
    if (!given("--g0")) cfg.g0 = loaded.g0;
    if (!given("--scenario")) cfg.scenario = loaded.scenario;
  }
  if (c.config_path.empty() || cmd.count("--scenario") > 0) {
    const auto scenario = emwalk::parse_scenario(c.scenario);
    if (!scenario) throw std::invalid_argument("unknown scenario '" + c.scenario + "'");
    cfg.scenario = *scenario;
  }
  if (!c.g0.empty()) cfg.g0 = c.g0;
  return cfg;
}

std::vector<std::size_t> parse_steps(const std::string& text) {
  std::vector<std::size_t> steps;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto comma = text.find(',', begin);
    const auto item = text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
    std::size_t pos = 0;
    const auto value = std::stoull(item, &pos);
    if (pos != item.size() || item.front() == '-') throw std::invalid_argument("invalid step '" + item + "'");
    steps.push_back(value);
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return steps;
}

int run_command(const CLI::App& cmd, const CliConfig& c, const std::string& out_dir) {
  const auto cfg = resolve(cmd, c);
  const auto record = emwalk::run_scenario(cfg);
  emwalk::write_outputs(record, out_dir);
  const auto& r = record.result;
  std::cerr << fmt::format("{} n={} p={} q={} ({}/{}): t_mix={} mixed_fraction={} wall={:.2f}s -> {}\n",
                           emwalk::to_string(cfg.scenario), record.params.n, emwalk::format_number(record.params.p),
                           emwalk::format_number(record.params.q), emwalk::to_string(record.regime.label.density),
                           emwalk::to_string(record.regime.label.churn),
                           r.t ? std::to_string(*r.t) : std::string("not mixed by horizon"),
                           emwalk::format_number(r.mixed_fraction), record.wall_seconds, out_dir);
  return 0;
}

int dump_command(const CLI::App& cmd, const CliConfig& c, const std::string& steps, const std::string& out_dir) {
  auto cfg = resolve(cmd, c);
  const auto t_list = parse_steps(steps);
  for (const auto& path : emwalk::dump_trajectory(cfg, t_list, out_dir)) std::cout << path.string() << '\n';
  return 0;
}

int inspect_command(const std::string& path) {
  const auto snap = emwalk::load_snapshot(path);
  const auto& g = snap.graph;
  nlohmann::ordered_json j = {{"t", snap.t},
                              {"seed", snap.seed},
                              {"n", g.vertex_count()},
                              {"edges", g.edge_count()},
                              {"min_degree", g.min_degree()},
                              {"max_degree", g.max_degree()},
                              {"isolated", g.isolated_count()},
                              {"connected", g.is_connected()},
                              {"cheeger_lower_bound", emwalk::cheeger_lower_bound(g)}};
  if (g.vertex_count() <= 20 && g.edge_count() > 0) j["conductance"] = emwalk::conductance_exact(g).phi;
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks on edge-Markovian dynamic graphs"};
  app.set_version_flag("--version", std::string(emwalk::version()));
  app.require_subcommand(1);

  CliConfig run_cfg;
  std::string run_out = "emwalk-out";
  auto* run = app.add_subcommand("run", "Run a scenario and write series, summary and per-trial records");
  add_scenario_options(*run, run_cfg);
  run->add_option("--out", run_out, "Output directory")->capture_default_str();

  CliConfig dump_cfg;
  std::string dump_out = "emwalk-snapshots";
  std::string dump_steps = "0";
  auto* dump = app.add_subcommand("dump", "Write snapshots G_t of trial 0");
  add_scenario_options(*dump, dump_cfg);
  dump->add_option("--t", dump_steps, "Comma-separated steps")->capture_default_str();
  dump->add_option("--out", dump_out, "Output directory")->capture_default_str();

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Print statistics of a snapshot file");
  inspect->add_option("snapshot", inspect_path, "Snapshot file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_command(*run, run_cfg, run_out);
    if (*dump) return dump_command(*dump, dump_cfg, dump_steps, dump_out);
    if (*inspect) return inspect_command(inspect_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "emwalk: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "emwalk: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
