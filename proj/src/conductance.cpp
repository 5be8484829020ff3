#include "emwalk/conductance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "emwalk/rng.hpp"

namespace emwalk {
namespace {

enum class Control { Continue, SkipChildren, Stop };

// ESU enumeration of connected vertex sets of size <= k_max, rooted at their
// minimum vertex. Tracks boundary and volume of the current set incrementally.
class SetGrower {
 public:
  struct State {
    std::span<const Vertex> members;  // insertion order, not sorted
    std::size_t boundary;
    std::size_t volume;
  };
  using Visitor = std::function<Control(const State&)>;

  SetGrower(const GraphState& g, std::size_t k_max, Visitor visit)
      : g_(g), k_max_(k_max), visit_(std::move(visit)), inside_(g.vertex_count(), 0),
        adjacent_(g.vertex_count(), 0) {}

  void run() {
    if (k_max_ == 0) return;
    for (Vertex root = 0; root < g_.vertex_count() && !stopped_; ++root) {
      root_ = root;
      add(root);
      std::vector<Vertex> ext;
      for (Vertex u : g_.neighbors(root)) {
        if (u > root) ext.push_back(u);
      }
      extend(std::move(ext));
      remove(root);
    }
  }

 private:
  bool covered(Vertex u) const { return inside_[u] || adjacent_[u] > 0; }

  void add(Vertex w) {
    boundary_ = boundary_ + g_.degree(w) - 2 * adjacent_[w];
    volume_ += g_.degree(w);
    inside_[w] = 1;
    for (Vertex u : g_.neighbors(w)) ++adjacent_[u];
    members_.push_back(w);
  }

  void remove(Vertex w) {
    members_.pop_back();
    for (Vertex u : g_.neighbors(w)) --adjacent_[u];
    inside_[w] = 0;
    volume_ -= g_.degree(w);
    boundary_ = boundary_ + 2 * adjacent_[w] - g_.degree(w);
  }

  void extend(std::vector<Vertex> ext) {
    const Control c = visit_(State{members_, boundary_, volume_});
    if (c == Control::Stop) {
      stopped_ = true;
      return;
    }
    if (c == Control::SkipChildren || members_.size() >= k_max_) return;
    while (!ext.empty() && !stopped_) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      // Exclusive neighbours of w: not in the set and not adjacent to it.
      for (Vertex u : g_.neighbors(w)) {
        if (u > root_ && !covered(u)) next.push_back(u);
      }
      add(w);
      extend(std::move(next));
      remove(w);
    }
  }

  const GraphState& g_;
  std::size_t k_max_;
  Visitor visit_;
  std::vector<std::uint8_t> inside_;
  std::vector<std::size_t> adjacent_;  // members adjacent to each vertex
  std::vector<Vertex> members_;
  std::size_t boundary_ = 0;
  std::size_t volume_ = 0;
  Vertex root_ = 0;
  bool stopped_ = false;
};

std::vector<std::uint8_t> membership(const GraphState& g, std::span<const Vertex> s) {
  std::vector<std::uint8_t> in(g.vertex_count(), 0);
  for (Vertex x : s) {
    if (x >= g.vertex_count()) throw std::invalid_argument("vertex outside graph");
    if (in[x]) throw std::invalid_argument("repeated vertex in set");
    in[x] = 1;
  }
  return in;
}

// Random connected set of the given size grown from a random root; empty if
// the root's component is too small.
std::vector<Vertex> random_connected_set(const GraphState& g, std::size_t size, CounterRng& rng) {
  const Vertex root = static_cast<Vertex>(rng.below(g.vertex_count()));
  std::vector<Vertex> set{root};
  std::vector<std::uint8_t> in(g.vertex_count(), 0);
  in[root] = 1;
  std::vector<Vertex> frontier;
  auto push_frontier = [&](Vertex x) {
    for (Vertex u : g.neighbors(x)) {
      if (!in[u]) frontier.push_back(u);
    }
  };
  push_frontier(root);
  while (set.size() < size) {
    // Frontier may hold stale entries; drop them lazily.
    while (!frontier.empty()) {
      const std::size_t i = rng.below(frontier.size());
      const Vertex w = frontier[i];
      frontier[i] = frontier.back();
      frontier.pop_back();
      if (in[w]) continue;
      in[w] = 1;
      set.push_back(w);
      push_frontier(w);
      break;
    }
    if (frontier.empty() && set.size() < size) return {};
  }
  return set;
}

}  // namespace

CutStats cut_stats(const GraphState& g, std::span<const Vertex> s) {
  if (s.empty()) throw std::domain_error("cut_stats needs a non-empty set");
  const auto in = membership(g, s);
  CutStats c;
  c.set_size = s.size();
  for (Vertex x : s) {
    c.volume += g.degree(x);
    for (Vertex y : g.neighbors(x)) c.boundary += in[y] ? 0 : 1;
  }
  if (c.volume == 0) throw std::domain_error("cut_stats needs a set of positive volume");
  c.phi = static_cast<double>(c.boundary) / static_cast<double>(c.volume);
  return c;
}

ConductanceResult conductance_exact(const GraphState& g, std::size_t max_vertices) {
  if (g.vertex_count() > max_vertices) throw std::domain_error("graph exceeds the exact-conductance vertex cap");
  ConductanceResult best;
  if (g.edge_count() == 0) return best;
  best.phi = std::numeric_limits<double>::infinity();
  const std::size_t cap2 = g.volume();  // compare 2*vol(S) <= vol(V) in integers
  SetGrower grower(g, g.vertex_count(), [&](const SetGrower::State& st) {
    if (2 * st.volume > cap2) return Control::SkipChildren;
    if (st.volume >= 1) {
      const double phi = static_cast<double>(st.boundary) / static_cast<double>(st.volume);
      if (phi < best.phi) {
        best.phi = phi;
        best.argmin.assign(st.members.begin(), st.members.end());
      }
    }
    return Control::Continue;
  });
  grower.run();
  std::sort(best.argmin.begin(), best.argmin.end());
  return best;
}

void for_each_connected_set(const GraphState& g, std::size_t k,
                            const std::function<bool(std::span<const Vertex>)>& visit) {
  std::vector<Vertex> sorted;
  SetGrower grower(g, k, [&](const SetGrower::State& st) {
    if (st.members.size() < k) return Control::Continue;
    sorted.assign(st.members.begin(), st.members.end());
    std::sort(sorted.begin(), sorted.end());
    return visit(sorted) ? Control::Continue : Control::Stop;
  });
  grower.run();
}

std::vector<std::vector<Vertex>> enumerate_connected_sets(const GraphState& g, std::size_t k) {
  std::vector<std::vector<Vertex>> out;
  for_each_connected_set(g, k, [&](std::span<const Vertex> s) {
    out.emplace_back(s.begin(), s.end());
    return true;
  });
  return out;
}

std::uint64_t count_connected_sets(const GraphState& g, std::size_t k) {
  std::uint64_t count = 0;
  SetGrower grower(g, k, [&](const SetGrower::State& st) {
    count += st.members.size() == k;
    return Control::Continue;
  });
  grower.run();
  return count;
}

std::vector<CutStats> track_cut_trajectory(Trajectory& traj, std::span<const Vertex> s, std::size_t t_max) {
  const GraphState& g0 = traj.at(0);
  const auto in = membership(g0, s);
  CutStats current;
  current.set_size = s.size();
  for (Vertex x : s) {
    current.volume += g0.degree(x);
    for (Vertex y : g0.neighbors(x)) current.boundary += in[y] ? 0 : 1;
  }
  auto finish = [](CutStats c) {
    c.phi = c.volume == 0 ? 0.0 : static_cast<double>(c.boundary) / static_cast<double>(c.volume);
    return c;
  };
  std::vector<CutStats> series;
  series.reserve(t_max + 1);
  series.push_back(finish(current));
  for (std::size_t t = 1; t <= t_max; ++t) {
    for (const auto& e : traj.added(t)) {
      current.boundary += in[e.u] != in[e.v];
      current.volume += in[e.u] + in[e.v];
    }
    for (const auto& e : traj.removed(t)) {
      current.boundary -= in[e.u] != in[e.v];
      current.volume -= in[e.u] + in[e.v];
    }
    series.push_back(finish(current));
  }
  return series;
}

std::vector<double> phi_preservation_experiment(Trajectory& traj, std::size_t t_max, PhiMode mode) {
  std::vector<double> series;
  series.reserve(t_max + 1);
  for (std::size_t t = 0; t <= t_max; ++t) {
    const GraphState& g = traj.at(t);
    series.push_back(mode == PhiMode::ExactSmallN ? conductance_exact(g).phi : cheeger_lower_bound(g));
  }
  return series;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Heuristic: return "heuristic";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool AssumptionReport::passes() const noexcept {
  return degrees == Verdict::Pass && (small_sets == Verdict::Pass || small_sets == Verdict::Heuristic) &&
         conductance == Verdict::Pass;
}

AssumptionReport check_slow_dense_assumptions(const GraphState& g0, double d, const AssumptionConfig& config) {
  AssumptionReport report;
  report.config = config;
  const std::size_t n = g0.vertex_count();
  const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 1)));

  report.min_deg = g0.min_degree();
  report.max_deg = g0.max_degree();
  const bool deg_ok = static_cast<double>(report.min_deg) >= config.degree_low * d &&
                      static_cast<double>(report.max_deg) <= config.degree_high * d && report.min_deg > 0;
  report.degrees = deg_ok ? Verdict::Pass : Verdict::Fail;

  // Small sets. Disconnected S splits into components whose boundaries add
  // up, so connected sets are the worst case.
  const auto max_size = std::min<std::size_t>(
      static_cast<std::size_t>(std::floor(config.small_set_log_factor * ln_n)), n == 0 ? 0 : n - 1);
  const double per_vertex = config.boundary_log_factor * ln_n;
  report.worst_small_set_ratio = std::numeric_limits<double>::infinity();
  bool violated = false;
  auto record = [&](std::size_t boundary, std::size_t size) {
    ++report.small_sets_checked;
    const double need = per_vertex * static_cast<double>(size);
    const double ratio = need > 0.0 ? static_cast<double>(boundary) / need : std::numeric_limits<double>::infinity();
    report.worst_small_set_ratio = std::min(report.worst_small_set_ratio, ratio);
    if (ratio < 1.0) violated = true;
  };
  const std::size_t exact_size = std::min(config.exact_set_size, max_size);
  SetGrower grower(g0, exact_size, [&](const SetGrower::State& st) {
    record(st.boundary, st.members.size());
    return violated ? Control::Stop : Control::Continue;
  });
  grower.run();
  bool sampled = false;
  if (!violated && max_size > exact_size && n > 0) {
    CounterRng rng(config.seed);
    for (std::size_t i = 0; i < config.sampled_sets && !violated; ++i) {
      const std::size_t size = exact_size + 1 + rng.below(max_size - exact_size);
      const auto set = random_connected_set(g0, size, rng);
      if (set.empty()) continue;
      sampled = true;
      std::size_t boundary = 0;
      std::vector<std::uint8_t> in(n, 0);
      for (Vertex x : set) in[x] = 1;
      for (Vertex x : set)
        for (Vertex y : g0.neighbors(x)) boundary += in[y] ? 0 : 1;
      record(boundary, set.size());
    }
  }
  report.small_sets = violated ? Verdict::Fail : (sampled ? Verdict::Heuristic : Verdict::Pass);

  report.phi_threshold = d > 1.0 ? config.conductance_factor * std::log(d) / d : 0.0;
  if (n <= config.exact_conductance_limit) {
    report.phi_exact = true;
    report.phi_estimate = conductance_exact(g0, config.exact_conductance_limit).phi;
    report.conductance = report.phi_estimate >= report.phi_threshold ? Verdict::Pass : Verdict::Fail;
  } else {
    const double lambda2 = support_lambda2_lazy(g0);
    report.phi_estimate = std::max(0.0, 1.0 - lambda2);
    if (report.phi_estimate >= report.phi_threshold) {
      report.conductance = Verdict::Pass;
    } else if (2.0 * std::sqrt(report.phi_estimate) < report.phi_threshold) {
      report.conductance = Verdict::Fail;
    } else {
      report.conductance = Verdict::Inconclusive;
    }
  }
  return report;
}

}  // namespace emwalk
