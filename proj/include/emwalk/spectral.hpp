#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "emwalk/distribution.hpp"
#include "emwalk/graph.hpp"
#include "emwalk/kernels.hpp"

namespace emwalk {

enum class SpectralMethod { DenseExact, PowerIteration };

struct SpectralOptions {
  std::size_t dense_limit = 2000;
  double tolerance = 1e-8;
  std::size_t max_iterations = 100000;
  std::uint64_t seed = 0x5eed;
};

/// Extreme nontrivial eigenvalues of the walk operators on one snapshot.
///
/// Isolated vertices are absorbing (self-transition 1), so each contributes
/// an eigenvalue 1 to both P and Q, and P = (I + Q)/2 holds on every graph.
struct SpectralSummary {
  double lambda2_lazy = 0.0;       // second-largest eigenvalue of P
  double lambda2_simple = 0.0;     // second-largest eigenvalue of Q
  double lambda_min_simple = 0.0;  // smallest eigenvalue of Q
  double lambda_abs_simple = 0.0;  // max(|lambda2(Q)|, |lambda_n(Q)|)
  SpectralMethod method = SpectralMethod::DenseExact;
  double residual = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
  /// Full spectrum of the requested operator, descending (dense method only).
  std::vector<double> eigenvalues;
};

/// Eigenvalues via the symmetric matrix D^{1/2} P D^{-1/2} on the non-isolated
/// vertices. Dense solve up to options.dense_limit non-isolated vertices,
/// deflated power iteration above.
SpectralSummary spectrum(const GraphState& g, WalkKind kind, const SpectralOptions& options = {});

/// Forces the power-iteration route regardless of size.
SpectralSummary spectrum_power_iteration(const GraphState& g, const SpectralOptions& options = {});

/// lambda2 of the lazy walk restricted to the non-isolated vertices (the
/// support of pi). 1 when there are no edges, 0 for a single edge.
double support_lambda2_lazy(const GraphState& g, const SpectralOptions& options = {});

/// 1 - lambda2 on the support of pi; a lower bound on the conductance.
double cheeger_lower_bound(const GraphState& g, const SpectralOptions& options = {});

struct ContractionCheck {
  double lhs = 0.0;  // ||fP/pi - 1||^2_{2,pi}
  double rhs = 0.0;  // lambda2(P)^2 ||f/pi - 1||^2_{2,pi}
  bool holds = false;
};

/// One lazy step contracts the l2(pi) distance by lambda2(P).
/// Throws std::domain_error if g is not connected.
ContractionCheck check_contraction(const Distribution& f, const GraphState& g);

struct CheegerCheck {
  double phi = 0.0;
  double lambda2 = 0.0;
  bool lower_holds = false;  // 1 - lambda2 <= phi
  bool upper_holds = false;  // phi <= 2 sqrt(1 - lambda2)
  bool holds() const noexcept { return lower_holds && upper_holds; }
};

/// Exact conductance against exact lambda2 (on the support of pi).
/// Throws std::domain_error when g has more than exact_limit vertices.
CheegerCheck check_cheeger(const GraphState& g, std::size_t exact_limit = 20);

}  // namespace emwalk
