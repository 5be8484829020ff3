#include "emwalk/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "emwalk/conductance.hpp"
#include "emwalk/rng.hpp"
#include "emwalk/walk.hpp"

namespace emwalk {
namespace {

constexpr double kSlack = 1e-9;

struct Support {
  std::vector<Vertex> vertices;  // non-isolated vertices, ascending
  GraphState graph;              // induced subgraph, relabelled
  std::size_t isolated = 0;
};

Support support_of(const GraphState& g) {
  Support s;
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (g.degree(x) > 0) s.vertices.push_back(x);
  }
  s.isolated = g.vertex_count() - s.vertices.size();
  s.graph = induced_subgraph(g, s.vertices);
  return s;
}

// Eigenvalues of D^{-1/2} A D^{-1/2} on a graph without isolated vertices, ascending.
Eigen::VectorXd normalized_adjacency_eigenvalues(const GraphState& h) {
  const auto m = static_cast<Eigen::Index>(h.vertex_count());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : h.edges()) {
    const double w = 1.0 / std::sqrt(static_cast<double>(h.degree(e.u)) * static_cast<double>(h.degree(e.v)));
    s(e.u, e.v) = w;
    s(e.v, e.u) = w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolve failed");
  return solver.eigenvalues();
}

void fill_from_q_spectrum(SpectralSummary& out, std::vector<double> q_desc, WalkKind kind) {
  if (q_desc.size() >= 2) {
    out.lambda2_simple = q_desc[1];
    out.lambda_min_simple = q_desc.back();
    out.lambda_abs_simple = std::max(std::abs(q_desc[1]), std::abs(q_desc.back()));
  } else {
    out.lambda2_simple = 0.0;
    out.lambda_min_simple = q_desc.empty() ? 0.0 : q_desc.back();
    out.lambda_abs_simple = 0.0;
  }
  out.lambda2_lazy = q_desc.size() >= 2 ? 0.5 * (1.0 + q_desc[1]) : 0.0;
  if (kind == WalkKind::Lazy) {
    for (double& v : q_desc) v = 0.5 * (1.0 + v);
  }
  out.eigenvalues = std::move(q_desc);
}

// Symmetric normalized adjacency S applied to x on a graph without isolated vertices.
class NormalizedAdjacency {
 public:
  explicit NormalizedAdjacency(const GraphState& h) : h_(h), inv_sqrt_(h.vertex_count()) {
    for (Vertex x = 0; x < h.vertex_count(); ++x) inv_sqrt_[x] = 1.0 / std::sqrt(static_cast<double>(h.degree(x)));
  }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (Vertex v = 0; v < h_.vertex_count(); ++v) {
      double acc = 0.0;
      for (Vertex u : h_.neighbors(v)) acc += x[u] * inv_sqrt_[u];
      y[v] = acc * inv_sqrt_[v];
    }
  }

 private:
  const GraphState& h_;
  std::vector<double> inv_sqrt_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool normalize(std::vector<double>& v) {
  const double norm = std::sqrt(dot(v, v));
  if (norm == 0.0) return false;
  for (double& x : v) x /= norm;
  return true;
}

void project_out(std::vector<double>& x, const std::vector<double>& unit) {
  const double c = dot(x, unit);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * unit[i];
}

struct PowerResult {
  double value = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Largest eigenvalue of (I + sign * S)/2, optionally orthogonal to `deflate`.
// Both operators have spectrum in [0, 1], so the top eigenvalue dominates.
PowerResult power_iterate(const NormalizedAdjacency& s, std::size_t m, double sign, const std::vector<double>* deflate,
                          const SpectralOptions& options, CounterRng rng) {
  std::vector<double> x(m);
  std::vector<double> sx(m);
  std::vector<double> mx(m);
  for (auto& v : x) v = rng.uniform() - 0.5;
  if (deflate) project_out(x, *deflate);
  PowerResult result;
  if (!normalize(x)) return result;

  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    s.apply(x, sx);
    for (std::size_t i = 0; i < m; ++i) mx[i] = 0.5 * (x[i] + sign * sx[i]);
    if (deflate) project_out(mx, *deflate);
    const double rho = dot(x, mx);
    double res = 0.0;
    for (std::size_t i = 0; i < m; ++i) res += (mx[i] - rho * x[i]) * (mx[i] - rho * x[i]);
    result.value = rho;
    result.residual = std::sqrt(res);
    result.iterations = it;
    if (result.residual <= options.tolerance) {
      result.converged = true;
      return result;
    }
    x.swap(mx);
    if (!normalize(x)) {
      // Iterate collapsed onto the null space: remaining spectrum is 0.
      result.value = 0.0;
      result.residual = 0.0;
      result.converged = true;
      return result;
    }
  }
  return result;
}

}  // namespace

SpectralSummary spectrum_power_iteration(const GraphState& g, const SpectralOptions& options) {
  SpectralSummary out;
  out.method = SpectralMethod::PowerIteration;
  const std::size_t n = g.vertex_count();
  if (n < 2) return out;
  const Support sup = support_of(g);
  const std::size_t m = sup.vertices.size();
  if (m == 0) {
    out.lambda2_lazy = out.lambda2_simple = out.lambda_min_simple = out.lambda_abs_simple = 1.0;
    return out;
  }
  const NormalizedAdjacency s(sup.graph);
  std::vector<double> top(m);
  for (Vertex x = 0; x < m; ++x) top[x] = std::sqrt(static_cast<double>(sup.graph.degree(x)));
  normalize(top);

  CounterRng rng(options.seed);
  const PowerResult low = power_iterate(s, m, -1.0, nullptr, options, rng.substream(1));
  const double lambda_min_support = 1.0 - 2.0 * low.value;

  double lambda2_q = 1.0;
  PowerResult second;
  second.converged = true;
  if (sup.isolated == 0) {
    second = power_iterate(s, m, +1.0, &top, options, rng.substream(2));
    // m == 1 cannot happen (an edge has two endpoints); m == 2 leaves only -1.
    lambda2_q = 2.0 * second.value - 1.0;
  }
  out.lambda2_simple = lambda2_q;
  out.lambda_min_simple = sup.isolated > 0 ? std::min(lambda_min_support, 1.0) : lambda_min_support;
  out.lambda_abs_simple = std::max(std::abs(lambda2_q), std::abs(out.lambda_min_simple));
  out.lambda2_lazy = 0.5 * (1.0 + lambda2_q);
  out.residual = std::max(low.residual, second.residual);
  out.converged = low.converged && second.converged;
  out.iterations = low.iterations + second.iterations;
  return out;
}

SpectralSummary spectrum(const GraphState& g, WalkKind kind, const SpectralOptions& options) {
  const std::size_t n = g.vertex_count();
  const Support sup = support_of(g);
  if (sup.vertices.size() > options.dense_limit) return spectrum_power_iteration(g, options);

  std::vector<double> q_desc;
  q_desc.reserve(n);
  if (!sup.vertices.empty()) {
    const auto ev = normalized_adjacency_eigenvalues(sup.graph);
    for (Eigen::Index i = 0; i < ev.size(); ++i) q_desc.push_back(ev[i]);
  }
  q_desc.insert(q_desc.end(), sup.isolated, 1.0);
  std::sort(q_desc.begin(), q_desc.end(), std::greater<>());

  SpectralSummary out;
  out.method = SpectralMethod::DenseExact;
  fill_from_q_spectrum(out, std::move(q_desc), kind);
  return out;
}

double support_lambda2_lazy(const GraphState& g, const SpectralOptions& options) {
  const Support sup = support_of(g);
  if (sup.vertices.empty()) return 1.0;
  return spectrum(sup.graph, WalkKind::Lazy, options).lambda2_lazy;
}

double cheeger_lower_bound(const GraphState& g, const SpectralOptions& options) {
  return std::max(0.0, 1.0 - support_lambda2_lazy(g, options));
}

ContractionCheck check_contraction(const Distribution& f, const GraphState& g) {
  if (f.size() != g.vertex_count()) throw std::length_error("distribution length does not match graph");
  if (!g.is_connected()) throw std::domain_error("contraction check needs a connected graph");
  const auto pi = stationary_dist(g).pi;
  const double lambda2 = spectrum(g, WalkKind::Lazy).lambda2_lazy;

  const std::size_t n = g.vertex_count();
  std::vector<double> fp(n, 0.0);
  if (n <= 64) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Vertex u = 0; u < n; ++u) {
      const auto nb = g.neighbors(u);
      if (nb.empty()) {
        p(u, u) = 1.0;
        continue;
      }
      p(u, u) = 0.5;
      for (Vertex v : nb) p(u, v) += 0.5 / static_cast<double>(nb.size());
    }
    const Eigen::Map<const Eigen::RowVectorXd> row(f.values().data(), static_cast<Eigen::Index>(n));
    const Eigen::RowVectorXd prod = row * p;
    for (std::size_t i = 0; i < n; ++i) fp[i] = prod[static_cast<Eigen::Index>(i)];
  } else {
    kernels::step_serial(WalkKind::Lazy, g, f.values(), fp);
  }
  const double before = l2pi_distance(f.values(), pi.values());
  const double after = l2pi_distance(fp, pi.values());
  ContractionCheck check;
  check.lhs = after * after;
  check.rhs = lambda2 * lambda2 * before * before;
  check.holds = check.lhs <= check.rhs + kSlack;
  return check;
}

CheegerCheck check_cheeger(const GraphState& g, std::size_t exact_limit) {
  if (g.vertex_count() > exact_limit) throw std::domain_error("graph too large for exact conductance");
  CheegerCheck check;
  check.phi = conductance_exact(g, exact_limit).phi;
  check.lambda2 = support_lambda2_lazy(g);
  const double gap = std::max(0.0, 1.0 - check.lambda2);
  check.lower_holds = 1.0 - check.lambda2 <= check.phi + kSlack;
  check.upper_holds = check.phi <= 2.0 * std::sqrt(gap) + kSlack;
  return check;
}

}  // namespace emwalk
