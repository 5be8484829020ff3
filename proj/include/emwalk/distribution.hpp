#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "emwalk/graph.hpp"

namespace emwalk {

/// Probability vector over V = {0, ..., n-1}.
///
/// Entries are finite and nonnegative and sum to 1 within kMassTolerance.
class Distribution {
 public:
  static constexpr double kMassTolerance = 1e-9;
  /// Drift beyond this triggers renormalize() during propagation.
  static constexpr double kRenormalizeThreshold = 1e-12;

  Distribution() = default;
  /// Throws std::invalid_argument unless the values form a distribution.
  explicit Distribution(std::vector<double> values);

  static Distribution point_mass(std::size_t n, Vertex x);
  static Distribution uniform(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double mass() const noexcept;
  /// Rescales to unit mass; returns the mass before rescaling.
  double renormalize() noexcept;

  /// For kernels that write in place; caller keeps the invariants.
  std::span<double> mutable_values() noexcept { return values_; }

 private:
  std::vector<double> values_;
};

}  // namespace emwalk
