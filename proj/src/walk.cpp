#include "emwalk/walk.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace emwalk {

Distribution::Distribution(std::vector<double> values) : values_(std::move(values)) {
  double sum = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("distribution entries must be finite and >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kMassTolerance) throw std::invalid_argument("distribution must sum to 1");
}

Distribution Distribution::point_mass(std::size_t n, Vertex x) {
  if (x >= n) throw std::out_of_range("point mass outside vertex range");
  std::vector<double> v(n, 0.0);
  v[x] = 1.0;
  return Distribution(std::move(v));
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform distribution needs n >= 1");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double Distribution::mass() const noexcept { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double Distribution::renormalize() noexcept {
  const double m = mass();
  if (m > 0.0) {
    for (double& v : values_) v /= m;
  }
  return m;
}

StationaryResult stationary_dist(const GraphState& g) {
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) return {Distribution::uniform(n), true};
  std::vector<double> pi(n);
  const double vol = static_cast<double>(g.volume());
  for (Vertex x = 0; x < n; ++x) pi[x] = static_cast<double>(g.degree(x)) / vol;
  return {Distribution(std::move(pi)), false};
}

Distribution step(const Distribution& mu, const GraphState& g, WalkKind kind) {
  if (mu.size() != g.vertex_count()) throw std::length_error("distribution length does not match graph");
  Distribution out = mu;
  kernels::step_omp(kind, g, mu.values(), out.mutable_values());
  return out;
}

Distribution propagate(Distribution mu0, Trajectory& traj, std::size_t t_max, WalkKind kind,
                       const StepProbe& probe) {
  if (mu0.size() != traj.params().n) throw std::length_error("distribution length does not match trajectory");
  Distribution current = std::move(mu0);
  Distribution next = current;
  for (std::size_t t = 1; t <= t_max; ++t) {
    const GraphState& g = traj.at(t);
    kernels::step_omp(kind, g, current.values(), next.mutable_values());
    if (std::abs(next.mass() - 1.0) > Distribution::kRenormalizeThreshold) next.renormalize();
    std::swap(current, next);
    if (probe) probe(t, current, g);
  }
  return current;
}

double tv_distance(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) throw std::length_error("distributions differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += std::abs(f[i] - g[i]);
  return 0.5 * sum;
}

double tv_distance(const Distribution& f, const Distribution& g) { return tv_distance(f.values(), g.values()); }

namespace {

double l2pi_sq(std::span<const double> mu, std::span<const double> pi) {
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (pi[i] > 0.0) {
      const double diff = mu[i] - pi[i];
      sum += diff * diff / pi[i];
    } else if (mu[i] > 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return sum;
}

}  // namespace

double l2pi_distance(std::span<const double> mu, std::span<const double> pi) {
  if (mu.size() != pi.size()) throw std::length_error("distributions differ in length");
  return std::sqrt(l2pi_sq(mu, pi));
}

double l2pi_distance(const Distribution& mu, const Distribution& pi) { return l2pi_distance(mu.values(), pi.values()); }

DistributionBatch::DistributionBatch(std::size_t n, std::span<const Vertex> starts)
    : n_(n), rows_(starts.size()), data_(n * starts.size(), 0.0), scratch_(n * starts.size(), 0.0) {
  for (std::size_t i = 0; i < rows_; ++i) {
    if (starts[i] >= n) throw std::out_of_range("start vertex outside vertex range");
    data_[i * n + starts[i]] = 1.0;
  }
}

void DistributionBatch::step(const GraphState& g, WalkKind kind) {
  if (g.vertex_count() != n_) throw std::length_error("batch width does not match graph");
  kernels::batch_step_omp(kind, g, data_, scratch_, rows_);
  std::swap(data_, scratch_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::span<double> r(data_.data() + i * n_, n_);
    const double m = std::accumulate(r.begin(), r.end(), 0.0);
    if (std::abs(m - 1.0) > Distribution::kRenormalizeThreshold) {
      for (double& v : r) v /= m;
    }
  }
}

std::vector<double> DistributionBatch::tv_to(std::span<const double> target) const {
  if (target.size() != n_) throw std::length_error("target length does not match batch");
  std::vector<double> out(rows_);
  kernels::batch_tv_omp(data_, target, out, rows_);
  return out;
}

std::vector<double> DistributionBatch::l2pi_sq_to(std::span<const double> pi) const {
  if (pi.size() != n_) throw std::length_error("target length does not match batch");
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = l2pi_sq(row(i), pi);
  return out;
}

}  // namespace emwalk
