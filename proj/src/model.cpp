#include "emwalk/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emwalk/graph.hpp"

namespace emwalk {
namespace {

bool is_probability(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

constexpr double kUnitSumSlack = 1e-12;

}  // namespace

ModelParams ModelParams::make(std::size_t n, double p, double q) {
  if (!is_probability(p) || !is_probability(q)) {
    throw std::invalid_argument("edge probabilities p and q must lie in [0, 1]");
  }
  return ModelParams{n, p, q};
}

double ModelParams::p_tilde() const { return stationary_edge_prob(p, q); }

double ModelParams::expected_degree() const {
  return n == 0 ? 0.0 : static_cast<double>(n - 1) * p_tilde();
}

double ModelParams::expected_changes() const {
  const double pt = p_tilde();
  return static_cast<double>(slot_count(n)) * (pt * q + (1.0 - pt) * p);
}

double stationary_edge_prob(double p, double q) {
  if (!is_probability(p) || !is_probability(q)) {
    throw std::invalid_argument("edge probabilities p and q must lie in [0, 1]");
  }
  if (p + q == 0.0) throw std::domain_error("stationary edge probability undefined for p = q = 0");
  return p / (p + q);
}

RegimeLabel classify_regime(std::size_t n, double d, double delta, const RegimeThresholds& th) {
  const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 1)));
  RegimeLabel label;
  if (d < th.sparse_log_factor * ln_n) {
    label.density = Density::Sparse;
  } else if (d > th.dense_log_factor * ln_n) {
    label.density = Density::Dense;
  } else {
    label.density = Density::SemiSparse;
  }
  if (delta >= d * static_cast<double>(n) / th.fast_divisor) {
    label.churn = Churn::Fast;
  } else if (delta <= th.slow_log_factor * ln_n) {
    label.churn = Churn::Slow;
  } else {
    label.churn = Churn::Other;
  }
  return label;
}

RegimeMetrics regime_metrics(const ModelParams& params, const RegimeThresholds& thresholds) {
  RegimeMetrics m;
  if (params.p == 0.0) {
    // No edge ever opens: p~ = 0 regardless of q (and p = q = 0 is a frozen graph).
    m.p_tilde = 0.0;
    m.d = 0.0;
    m.delta = 0.0;
  } else {
    m.p_tilde = params.p_tilde();
    m.d = params.expected_degree();
    m.delta = params.expected_changes();
  }
  m.label = classify_regime(params.n, m.d, m.delta, thresholds);
  return m;
}

std::string_view to_string(Density density) noexcept {
  switch (density) {
    case Density::Sparse: return "sparse";
    case Density::SemiSparse: return "semi-sparse";
    case Density::Dense: return "dense";
  }
  return "?";
}

std::string_view to_string(Churn churn) noexcept {
  switch (churn) {
    case Churn::Fast: return "fast";
    case Churn::Slow: return "slow";
    case Churn::Other: return "other";
  }
  return "?";
}

double slot_chain_tv(double p, double q, std::size_t t, bool start_present) {
  const double pt = stationary_edge_prob(p, q);
  const double initial = start_present ? 1.0 - pt : pt;
  return std::pow(std::abs(1.0 - p - q), static_cast<double>(t)) * initial;
}

std::size_t graph_chain_mixing_time(std::size_t n, double p, double q, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double pt = stationary_edge_prob(p, q);
  if (std::abs(p + q - 1.0) <= kUnitSumSlack) return 1;
  const double rate = std::abs(1.0 - p - q);
  if (rate >= 1.0) throw std::domain_error("slot chain does not converge (|1-p-q| = 1)");

  const double slots = static_cast<double>(slot_count(n));
  const double worst = std::max(pt, 1.0 - pt);
  if (slots * worst <= eps) return 0;
  // Closed-form guess, then step to the exact smallest t.
  const double guess = std::log(eps / (slots * worst)) / std::log(rate);
  auto t = static_cast<std::size_t>(std::max(0.0, std::floor(guess) - 1.0));
  auto bound = [&](std::size_t s) { return slots * std::pow(rate, static_cast<double>(s)) * worst; };
  while (t > 0 && bound(t - 1) <= eps) --t;
  while (bound(t) > eps) ++t;
  return t;
}

}  // namespace emwalk
