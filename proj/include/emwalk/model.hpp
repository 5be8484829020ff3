#pragma once

#include <cstddef>
#include <string_view>

namespace emwalk {

/// Parameters of the edge-Markovian process G(n, p, q): an absent slot opens
/// with probability p, a present edge closes with probability q.
struct ModelParams {
  std::size_t n = 0;
  double p = 0.0;
  double q = 0.0;

  /// Validates p, q in [0, 1]; throws std::invalid_argument otherwise.
  static ModelParams make(std::size_t n, double p, double q);

  /// Stationary edge probability p/(p+q). Throws std::domain_error if p = q = 0.
  double p_tilde() const;
  /// Expected stationary degree (n-1) * p_tilde.
  double expected_degree() const;
  /// Expected number of flipped slots per step at stationarity.
  double expected_changes() const;
};

/// p/(p+q); throws std::domain_error when p = q = 0.
double stationary_edge_prob(double p, double q);

enum class Density { Sparse, SemiSparse, Dense };
enum class Churn { Fast, Slow, Other };

struct RegimeLabel {
  Density density = Density::Sparse;
  Churn churn = Churn::Other;
  friend constexpr bool operator==(const RegimeLabel&, const RegimeLabel&) = default;
};

/// Finite-n stand-ins for the asymptotic regime boundaries:
///   Sparse     d <  sparse_log_factor * ln n
///   Dense      d >  dense_log_factor * ln n
///   Fast       delta >= d * n / fast_divisor
///   Slow       delta <= slow_log_factor * ln n
struct RegimeThresholds {
  double sparse_log_factor = 1.0;
  double dense_log_factor = 4.0;
  double fast_divisor = 8.0;
  double slow_log_factor = 4.0;
};

struct RegimeMetrics {
  double p_tilde = 0.0;
  double d = 0.0;
  double delta = 0.0;
  RegimeLabel label;
};

RegimeMetrics regime_metrics(const ModelParams& params, const RegimeThresholds& thresholds = {});
RegimeLabel classify_regime(std::size_t n, double d, double delta, const RegimeThresholds& thresholds = {});

std::string_view to_string(Density density) noexcept;
std::string_view to_string(Churn churn) noexcept;

/// Total-variation distance to stationarity of one slot's two-state chain
/// after t steps from a deterministic state (present or absent).
double slot_chain_tv(double p, double q, std::size_t t, bool start_present);

/// Smallest t with C(n,2) * |1-p-q|^t * max_slot_tv <= eps, where max_slot_tv
/// is the worst initial per-slot distance max(p~, 1-p~). Returns 1 when
/// p + q = 1. Throws std::domain_error when |1-p-q| = 1 (p = q = 0 or
/// p = q = 1), where the slot chain does not converge.
std::size_t graph_chain_mixing_time(std::size_t n, double p, double q, double eps);

}  // namespace emwalk
