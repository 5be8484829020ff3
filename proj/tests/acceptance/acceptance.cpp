// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails. Runs single-threaded so the measured
// runtimes are comparable with the stated budgets.

#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "emwalk/bd_chain.hpp"
#include "emwalk/conductance.hpp"
#include "emwalk/evolution.hpp"
#include "emwalk/mixing.hpp"
#include "emwalk/model.hpp"
#include "emwalk/rng.hpp"
#include "emwalk/scenario.hpp"
#include "emwalk/spectral.hpp"
#include "emwalk/walk.hpp"
#include "oracles.hpp"

namespace {

using emwalk::GraphState;
using emwalk::ModelParams;
using emwalk::Trajectory;
using emwalk::Vertex;
using emwalk::WalkKind;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> check;
};

double log2d(double x) { return std::log2(x); }

// Second-largest eigenvalue of the lazy walk on the non-isolated vertices,
// from the general eigensolver applied to the dense operator.
double oracle_support_lambda2(const GraphState& g) {
  std::vector<Vertex> keep;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (g.degree(x) > 0) keep.push_back(x);
  }
  if (keep.size() < 2) return keep.empty() ? 1.0 : 0.0;
  const auto h = emwalk::induced_subgraph(g, keep);
  return oracle::eigenvalues(oracle::transition_matrix(h, WalkKind::Lazy))[1];
}

// 1. Per-slot chain contracts by |1-p-q| per step; p+q=1 mixes in one step.
Outcome graph_chain_contraction() {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_formula = 0.0;
  double worst_oracle = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double p = u(gen);
    double q = u(gen);
    if (p + q == 0.0) q = 0.5;
    const std::size_t t = gen() % 60;
    const bool present = (gen() & 1U) != 0;
    const double pt = p / (p + q);
    const double initial = present ? 1.0 - pt : pt;
    const double tv = emwalk::slot_chain_tv(p, q, t, present);
    worst_formula = std::max(worst_formula, std::abs(tv - std::pow(std::abs(1.0 - p - q), static_cast<double>(t)) * initial));
    worst_oracle = std::max(worst_oracle, std::abs(tv - oracle::slot_tv_by_iteration(p, q, t, present)));
  }
  bool one_step = true;
  for (int i = 0; i < 100; ++i) {
    const double p = u(gen);
    const std::size_t n = 2 + gen() % 1000;
    one_step = one_step && emwalk::graph_chain_mixing_time(n, p, 1.0 - p, 0.01 + 0.9 * u(gen)) == 1;
  }
  return {worst_formula <= 1e-12 && worst_oracle <= 1e-12 && one_step,
          fmt::format("max |tv - |1-p-q|^t tv0| = {:.2e}, max |tv - 2x2 iteration| = {:.2e}, p+q=1 gives t_mix=1: {}",
                      worst_formula, worst_oracle, one_step)};
}

// 2. 1 - lambda2 <= Phi <= 2 sqrt(1 - lambda2) with exact Phi and lambda2.
Outcome cheeger_suite() {
  std::vector<GraphState> graphs;
  for (std::uint64_t s = 0; s < 200; ++s) graphs.push_back(oracle::random_graph(12, 0.5, 1000 + s));
  for (std::size_t n = 2; n <= 14; ++n) graphs.push_back(emwalk::path_graph(n));
  for (std::size_t n = 3; n <= 14; ++n) graphs.push_back(emwalk::cycle_graph(n));
  for (std::size_t n = 2; n <= 13; ++n) graphs.push_back(emwalk::complete_graph(n));
  for (std::size_t i = 0; i < 13; ++i) {
    const std::size_t a = 2 + i % 5;
    const std::size_t b = 2 + (i * 3) % 7;
    GraphState left = i % 3 == 0 ? emwalk::path_graph(a) : i % 3 == 1 ? emwalk::cycle_graph(a + 1) : emwalk::complete_graph(a);
    GraphState right = i % 2 == 0 ? emwalk::complete_graph(b) : emwalk::path_graph(b + 1);
    graphs.push_back(emwalk::disjoint_union(left, right));
  }
  std::size_t holds = 0;
  double worst_phi_gap = 0.0;
  double worst_lambda_gap = 0.0;
  double worst_violation = 0.0;
  for (const auto& g : graphs) {
    const auto c = emwalk::check_cheeger(g);
    const double phi = oracle::conductance_all_subsets(g);
    const double lambda2 = oracle_support_lambda2(g);
    worst_phi_gap = std::max(worst_phi_gap, std::abs(c.phi - phi));
    worst_lambda_gap = std::max(worst_lambda_gap, std::abs(c.lambda2 - lambda2));
    const double gap = 1.0 - lambda2;
    worst_violation = std::max({worst_violation, gap - phi, phi - 2.0 * std::sqrt(std::max(0.0, gap))});
    const bool ok = gap <= phi + 1e-9 && phi <= 2.0 * std::sqrt(std::max(0.0, gap)) + 1e-9 && c.holds();
    holds += ok ? 1 : 0;
  }
  const bool agree = worst_phi_gap <= 1e-12 && worst_lambda_gap <= 1e-9;
  return {holds == graphs.size() && graphs.size() == 250 && agree,
          fmt::format("{}/{} graphs satisfy both sides (worst violation {:.2e}); library vs oracle: |dPhi| {:.1e}, |dlambda2| {:.1e}",
                      holds, graphs.size(), worst_violation, worst_phi_gap, worst_lambda_gap)};
}

// 3. ||fP/pi - 1||^2 <= lambda2^2 ||f/pi - 1||^2 by dense oracle.
Outcome spectral_contraction() {
  std::mt19937_64 gen(3);
  std::exponential_distribution<double> e(1.0);
  std::size_t instances = 0;
  std::size_t holds = 0;
  double max_ratio = 0.0;
  double worst_agreement = 0.0;
  for (std::uint64_t seed = 0; instances < 1000; ++seed) {
    const std::size_t n = 2 + seed % 15;
    const auto g = oracle::random_graph(n, 0.5, 5000 + seed);
    if (!g.is_connected()) continue;
    std::vector<double> f(n);
    double total = 0.0;
    for (auto& x : f) total += x = (gen() % 4 == 0) ? 0.0 : e(gen);
    if (total == 0.0) f[0] = total = 1.0;
    for (auto& x : f) x /= total;

    const Eigen::MatrixXd p = oracle::transition_matrix(g, WalkKind::Lazy);
    const Eigen::RowVectorXd fp = oracle::row(f) * p;
    const auto deg = oracle::degrees(g);
    const double vol = 2.0 * static_cast<double>(g.edge_count());
    double lhs = 0.0;
    double before = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const double pi = static_cast<double>(deg[x]) / vol;
      const double a = fp(static_cast<Eigen::Index>(x)) - pi;
      lhs += a * a / pi;
      before += (f[x] - pi) * (f[x] - pi) / pi;
    }
    const double lambda2 = oracle::eigenvalues(p)[1];
    const double rhs = lambda2 * lambda2 * before;
    const auto lib = emwalk::check_contraction(emwalk::Distribution(f), g);
    worst_agreement = std::max({worst_agreement, std::abs(lib.lhs - lhs) / std::max(1.0, lhs),
                                std::abs(lib.rhs - rhs) / std::max(1.0, rhs)});
    if (lhs <= rhs + 1e-9 && lib.holds) ++holds;
    if (rhs > 1e-12) max_ratio = std::max(max_ratio, lhs / rhs);
    ++instances;
  }
  return {holds == instances && worst_agreement <= 1e-9,
          fmt::format("{}/{} instances hold, max lhs/rhs = {:.6f}, library vs oracle rel. diff {:.1e}", holds, instances,
                      max_ratio, worst_agreement)};
}

// 4. Connected-set restriction is exact; connected k-set counts <= n D^(2k-2).
Outcome connected_set_checks() {
  std::size_t phi_equal = 0;
  std::size_t bound_ok = 0;
  std::size_t count_exact = 0;
  std::size_t count_checks = 0;
  double worst_bound_ratio = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 4 + s % 9;
    const double p = 0.15 + 0.1 * static_cast<double>(s % 6);
    const auto g = oracle::random_graph(n, p, 9000 + s);
    if (std::abs(emwalk::conductance_exact(g).phi - oracle::conductance_all_subsets(g)) <= 1e-12) ++phi_equal;
    bool all_within = true;
    const double delta = static_cast<double>(g.max_degree());
    for (std::size_t k = 1; k <= 6; ++k) {
      const auto count = emwalk::count_connected_sets(g, k);
      const double bound = static_cast<double>(n) * std::pow(delta, 2.0 * static_cast<double>(k) - 2.0);
      all_within = all_within && static_cast<double>(count) <= bound;
      if (bound > 0) worst_bound_ratio = std::max(worst_bound_ratio, static_cast<double>(count) / bound);
      ++count_checks;
      count_exact += count == oracle::connected_set_count(g, k) ? 1 : 0;
    }
    bound_ok += all_within ? 1 : 0;
  }
  return {phi_equal == 100 && bound_ok == 100 && count_exact == count_checks,
          fmt::format("Phi equal on {}/100 graphs, count bound on {}/100 (max count/bound {:.3f}), counts match brute force {}/{}",
                      phi_equal, bound_ok, worst_bound_ratio, count_exact, count_checks)};
}

// 5. Birth-and-death chain: detailed balance, occupancy, hitting times.
Outcome birth_death_chain() {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.05, 0.5);
  const auto random_chain = [&](std::size_t m, std::uniform_real_distribution<double>& rate) {
    std::vector<double> up(m + 1, 0.0), down(m + 1, 0.0);
    for (std::size_t k = 0; k <= m; ++k) {
      if (k < m) up[k] = rate(gen);
      if (k > 0) down[k] = rate(gen);
    }
    return emwalk::BDChain::make(up, down);
  };

  double worst_balance = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto chain = random_chain(1 + gen() % 40, u);
    const auto pi = emwalk::bd_stationary(chain);
    const auto dense = oracle::bd_stationary(chain);
    for (std::size_t k = 0; k <= chain.ceiling(); ++k) {
      worst_balance = std::max(worst_balance, std::abs(pi[k] - dense[k]));
      if (k < chain.ceiling()) worst_balance = std::max(worst_balance, std::abs(pi[k] * chain.up(k) - pi[k + 1] * chain.down(k + 1)));
    }
  }

  const auto occ_chain = emwalk::BDChain::constant(8, 0.3, 0.2);
  const auto counts = emwalk::bd_occupancy(occ_chain, 0, 1000000, 55);
  const auto occ_pi = emwalk::bd_stationary(occ_chain);
  double occ_tv = 0.0;
  for (std::size_t k = 0; k <= 8; ++k) occ_tv += 0.5 * std::abs(static_cast<double>(counts[k]) / 1e6 - occ_pi[k]);

  const auto ruin = emwalk::BDChain::constant(10, 0.5, 0.5).with_absorbing_ends();
  const std::size_t ends[] = {0, 10};
  const auto ruin_est = emwalk::bd_hitting_time(ruin, 5, ends, {10000, 1000000, 77});
  bool hits_ok = std::abs(ruin_est.exact_mean - 25.0) <= 1e-9 &&
                 std::abs(ruin_est.mc_mean - ruin_est.exact_mean) <= 3.0 * ruin_est.mc_stderr;
  std::size_t agree = 0;
  double worst_z = std::abs(ruin_est.mc_mean - ruin_est.exact_mean) / ruin_est.mc_stderr;
  double worst_dense = 0.0;
  std::uniform_real_distribution<double> mild(0.25, 0.5);
  const int chains = 10;
  for (int i = 0; i < chains; ++i) {
    // Mild drift keeps expected hitting times, and hence the Monte Carlo cost, small.
    const auto chain = random_chain(2 + gen() % 7, mild);
    const std::size_t start = gen() % (chain.ceiling() + 1);
    const std::size_t target[] = {static_cast<std::size_t>(gen() % (chain.ceiling() + 1))};
    const auto est = emwalk::bd_hitting_time(chain, start, target, {10000, 1000000, 200 + static_cast<std::uint64_t>(i)});
    const double dense = oracle::bd_hitting(chain, target)[start];
    worst_dense = std::max(worst_dense, std::abs(est.exact_mean - dense) / std::max(1.0, dense));
    const double z = est.mc_stderr > 0 ? std::abs(est.mc_mean - est.exact_mean) / est.mc_stderr : 0.0;
    worst_z = std::max(worst_z, z);
    agree += (est.mc_hit_fraction == 1.0 && std::abs(est.mc_mean - est.exact_mean) <= 3.0 * est.mc_stderr + 1e-12) ? 1 : 0;
  }
  hits_ok = hits_ok && agree == static_cast<std::size_t>(chains) && worst_dense <= 1e-8;
  return {worst_balance <= 1e-12 && occ_tv <= 0.01 && hits_ok,
          fmt::format("detailed balance/dense err {:.1e}, occupancy TV {:.4f}, ruin mean {:.4f} (MC {:.3f} +- {:.3f}), "
                      "MC within 3 SE on {}/{} random chains (max |z| {:.2f})",
                      worst_balance, occ_tv, ruin_est.exact_mean, ruin_est.mc_mean, ruin_est.mc_stderr, agree, chains, worst_z)};
}

// 6. Fast-dense: t_mix <= 3 log2 n in >= 90% of 20 trajectories, TV <= 0.1 afterwards.
Outcome fast_dense_mixing() {
  const std::size_t n = 256;
  const auto params = ModelParams::make(n, 0.1, 0.5);
  const double bound = 3.0 * log2d(static_cast<double>(n));
  emwalk::MixingConfig cfg;
  cfg.eps = 0.05;
  cfg.window = 16;
  cfg.horizon = static_cast<std::size_t>(bound) + cfg.window;
  cfg.early_exit = false;
  std::size_t good = 0;
  std::size_t max_t = 0;
  double worst_after = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Trajectory traj(params, emwalk::derive_seed(600, i));
    const auto r = emwalk::dynamic_mixing_time(traj, cfg);
    if (!r.t_mix || static_cast<double>(*r.t_mix) > bound) continue;
    max_t = std::max(max_t, *r.t_mix);
    const double after = *std::max_element(r.tv_max.begin() + static_cast<std::ptrdiff_t>(*r.t_mix), r.tv_max.end());
    worst_after = std::max(worst_after, after);
    if (after <= 0.1) ++good;
  }
  return {good >= 18, fmt::format("{}/20 trajectories mixed by {:.0f} steps and stayed <= 0.1 through step {} "
                                  "(max t_mix {}, max TV after t_mix {:.4f})",
                                  good, bound, cfg.horizon, max_t, worst_after)};
}

// 7. Fast-sparse: worst-start TV >= 0.05 on >= 90% of steps in [50, 150].
Outcome fast_sparse_nonmixing() {
  const std::size_t n = 500;
  const auto params = emwalk::preset_params(emwalk::Scenario::FastSparse, n);
  emwalk::MixingConfig cfg;
  std::size_t good = 0;
  double min_fraction = 1.0;
  double pooled = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Trajectory traj(params, emwalk::derive_seed(700, i));
    const auto r = emwalk::nonmixing_witness(traj, cfg, 50, 150, 0.05);
    min_fraction = std::min(min_fraction, r.fraction_at_or_above_floor);
    pooled += r.fraction_at_or_above_floor / 20.0;
    good += r.fraction_at_or_above_floor >= 0.9 ? 1 : 0;
  }
  return {good == 20, fmt::format("{}/20 seeds have TV >= 0.05 on >= 90% of steps (min fraction {:.3f}, pooled {:.3f}, "
                                  "20 sampled starts per trajectory)",
                                  good, min_fraction, pooled)};
}

// 8. Semi-sparse fast: l2(pi)^2 <= 50 throughout the probe interval in >= 90% of runs.
Outcome coarse_mixing() {
  const std::size_t n = 512;
  const auto params = emwalk::preset_params(emwalk::Scenario::FastSemisparse, n);
  const auto t_lo = static_cast<std::size_t>(std::ceil(10.0 * log2d(static_cast<double>(n))));
  const auto t_hi = t_lo + static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::size_t good = 0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Trajectory traj(params, emwalk::derive_seed(800, i));
    // Worst case over 20 start vertices drawn from the trajectory's stream.
    const auto starts = emwalk::resolve_starts(emwalk::StartSpec{}, n, traj.seed());
    double run_max = 0.0;
    for (Vertex x : starts) {
      const auto series = emwalk::coarse_mixing_stat(traj, t_lo, t_hi, x);
      run_max = std::max(run_max, *std::max_element(series.begin(), series.end()));
    }
    worst = std::max(worst, run_max);
    good += run_max <= 50.0 ? 1 : 0;
  }
  return {good >= 18, fmt::format("{}/20 runs keep max-start l2(pi)^2 <= 50 on t in [{}, {}] (largest value {:.4g})", good,
                                  t_lo, t_hi, worst)};
}

// 9. Slow-sparse: from an isolated vertex of G_0, TV = 1 for all t <= n/10.
Outcome slow_sparse_isolated() {
  const std::size_t n = 500;
  const auto params = emwalk::preset_params(emwalk::Scenario::SlowSparse, n);
  const std::size_t t_max = n / 10;
  std::size_t stuck = 0;
  std::size_t no_isolated = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    Trajectory traj(params, emwalk::derive_seed(900, i));
    std::vector<Vertex> isolated;
    for (Vertex x = 0; x < n; ++x) {
      if (traj.at(0).degree(x) == 0) isolated.push_back(x);
    }
    if (isolated.empty()) {
      ++no_isolated;
      continue;
    }
    emwalk::CounterRng rng(emwalk::derive_seed(traj.seed(), 1));
    const Vertex start = isolated[rng.below(isolated.size())];
    emwalk::MixingConfig cfg;
    cfg.horizon = t_max;
    cfg.window = 1;
    cfg.early_exit = false;
    cfg.starts.mode = emwalk::StartSpec::Mode::Explicit;
    cfg.starts.vertices = {start};
    const auto r = emwalk::dynamic_mixing_time(traj, cfg);
    const bool all_one = std::all_of(r.tv_max.begin(), r.tv_max.end(), [](double tv) { return tv >= 1.0 - 1e-12; });
    stuck += all_one ? 1 : 0;
  }
  return {stuck >= 50, fmt::format("{}/100 runs keep TV = 1 for t <= {} ({} runs had no isolated vertex in G_0)", stuck,
                                   t_max, no_isolated)};
}

// 10. Slow-dense n = 12: min_t Phi(G_t) >= Phi(G_0)/4 in >= 95% of runs.
Outcome slow_dense_conductance() {
  const std::size_t n = 12;
  const auto params = emwalk::preset_params(emwalk::Scenario::SlowDense, n);
  const double d = params.expected_degree();
  const auto t_max = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * d * std::log(static_cast<double>(n))));
  std::size_t good = 0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < 100; ++i) {
    Trajectory traj(params, emwalk::derive_seed(1000, i));
    const auto series = emwalk::phi_preservation_experiment(traj, t_max, emwalk::PhiMode::ExactSmallN);
    const double phi0 = series.front();
    const double low = *std::min_element(series.begin(), series.end());
    if (phi0 > 0) worst_ratio = std::min(worst_ratio, low / phi0);
    good += low >= phi0 / 4.0 ? 1 : 0;
  }
  return {good >= 95, fmt::format("{}/100 runs keep Phi >= Phi_0/4 over {} steps (smallest min/Phi_0 ratio {:.3f})", good,
                                  t_max, worst_ratio)};
}

// 11. Slow-dense n = 200: t_mix <= 10 log2 n / Phi_lb^2 for G_0 passing the assumptions.
Outcome slow_dense_mixing() {
  const std::size_t n = 200;
  const auto params = emwalk::preset_params(emwalk::Scenario::SlowDense, n);
  const double d = params.expected_degree();
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t good = 0;
  std::size_t max_t = 0;
  double min_bound = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; accepted < 20 && i < 1000; ++i) {
    Trajectory traj(params, emwalk::derive_seed(1100, i));
    if (!emwalk::check_slow_dense_assumptions(traj.at(0), d).passes()) {
      ++rejected;
      continue;
    }
    ++accepted;
    const double phi_lb = emwalk::cheeger_lower_bound(traj.at(0));
    const double bound = 10.0 * log2d(static_cast<double>(n)) / (phi_lb * phi_lb);
    min_bound = std::min(min_bound, bound);
    emwalk::MixingConfig cfg;
    cfg.horizon = static_cast<std::size_t>(std::ceil(bound)) + cfg.window_for(n);
    const auto r = emwalk::dynamic_mixing_time(traj, cfg);
    if (r.t_mix && static_cast<double>(*r.t_mix) <= bound) {
      ++good;
      max_t = std::max(max_t, *r.t_mix);
    }
  }
  return {accepted == 20 && good >= 18,
          fmt::format("{}/{} qualifying G_0 mixed within the bound (max t_mix {}, smallest bound {:.1f}, {} draws rejected "
                      "by the assumption check)",
                      good, accepted, max_t, min_bound, rejected)};
}

// 12. Identical config + seed gives byte-identical CSV/JSON.
Outcome determinism() {
  std::size_t identical = 0;
  std::size_t total = 0;
  for (auto scenario : {emwalk::Scenario::FastDense, emwalk::Scenario::SlowSparse, emwalk::Scenario::FastSemisparse}) {
    emwalk::ScenarioConfig cfg;
    cfg.scenario = scenario;
    cfg.n = 256;
    cfg.horizon = 40;
    cfg.trials = 4;
    cfg.seed = 1234;
    cfg.spectral = scenario == emwalk::Scenario::FastDense;
    std::vector<std::string> outputs;
    for (int threads : {1, 2}) {
      omp_set_num_threads(threads);
      const auto r = emwalk::run_scenario(cfg);
      std::ostringstream csv;
      emwalk::write_series_csv(csv, r);
      std::ostringstream nd;
      emwalk::write_trials_ndjson(nd, r);
      outputs.push_back(csv.str() + emwalk::summary_json(r).dump(2) + nd.str());
    }
    omp_set_num_threads(1);
    ++total;
    identical += outputs[0] == outputs[1] ? 1 : 0;
  }
  return {identical == total, fmt::format("{}/{} scenarios byte-identical across reruns (1 and 2 threads)", identical, total)};
}

}  // namespace

int main() {
  omp_set_num_threads(1);
  const std::vector<Criterion> criteria = {
      {1, "graph-chain contraction", 1.0, graph_chain_contraction},
      {2, "Cheeger inequality suite", 30.0, cheeger_suite},
      {3, "spectral contraction of one lazy step", 30.0, spectral_contraction},
      {4, "connected-set restriction and count bound", 60.0, connected_set_checks},
      {5, "birth-and-death chain", 30.0, birth_death_chain},
      {6, "fast-dense mixing", 60.0, fast_dense_mixing},
      {7, "fast-sparse non-mixing", 120.0, fast_sparse_nonmixing},
      {8, "semi-sparse coarse mixing", 120.0, coarse_mixing},
      {9, "slow-sparse isolated start", 60.0, slow_sparse_isolated},
      {10, "slow-dense conductance preservation", 60.0, slow_dense_conductance},
      {11, "slow-dense mixing", 120.0, slow_dense_mixing},
      {12, "determinism", 10.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = out.pass && in_time;
    failures += pass ? 0 : 1;
    fmt::print("{} criterion {:>2} {}: {} [{:.2f} s, budget {:.0f} s{}]\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail,
               seconds, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
