#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "emwalk/distribution.hpp"

namespace emwalk {

/// Birth-and-death chain on {0, ..., m}: from state k move up w.p. b_k,
/// down w.p. d_k, hold w.p. r_k = 1 - b_k - d_k. b_m = 0 and d_0 = 0.
class BDChain {
 public:
  /// up[k] = b_k, down[k] = d_k for k = 0..m. Throws std::invalid_argument
  /// on mismatched lengths, negative rates, b_k + d_k > 1, b_m != 0 or d_0 != 0.
  static BDChain make(std::vector<double> up, std::vector<double> down);
  /// b_k = up for k < m, d_k = down for k > 0.
  static BDChain constant(std::size_t m, double up, double down);

  /// Same rates, except states 0 and m become absorbing.
  BDChain with_absorbing_ends() const;

  std::size_t ceiling() const noexcept { return up_.size() - 1; }
  double up(std::size_t k) const noexcept { return up_[k]; }
  double down(std::size_t k) const noexcept { return down_[k]; }
  double hold(std::size_t k) const noexcept { return 1.0 - up_[k] - down_[k]; }

  /// b_k > 0 for k < m and d_k > 0 for k > 0.
  bool irreducible() const noexcept;

 private:
  BDChain(std::vector<double> up, std::vector<double> down) : up_(std::move(up)), down_(std::move(down)) {}
  std::vector<double> up_;
  std::vector<double> down_;
};

/// pi(k) = w_k / sum_j w_j with w_k = prod_{i=1..k} b_{i-1} / d_i.
/// Throws std::domain_error for a reducible chain.
Distribution bd_stationary(const BDChain& chain);

/// Expected hitting time of `targets` from every state, by solving the
/// tridiagonal first-step system. +infinity where the targets are not hit
/// almost surely.
std::vector<double> bd_mean_hitting_times(const BDChain& chain, std::span<const std::size_t> targets);

struct HittingMonteCarlo {
  std::size_t trials = 10000;
  std::size_t horizon = 1000000;
  std::uint64_t seed = 1;
};

struct HittingEstimate {
  double exact_mean = 0.0;
  double mc_mean = 0.0;        // over trials that hit within the horizon
  double mc_stderr = 0.0;      // standard error of mc_mean
  double mc_hit_fraction = 0.0;
  std::size_t trials = 0;
};

HittingEstimate bd_hitting_time(const BDChain& chain, std::size_t start, std::span<const std::size_t> targets,
                                const HittingMonteCarlo& mc = {});
HittingEstimate bd_hitting_time(const BDChain& chain, std::size_t start, std::size_t target,
                                const HittingMonteCarlo& mc = {});

/// Visit counts per state over `steps` transitions from `start` (the start
/// state itself is not counted).
std::vector<std::uint64_t> bd_occupancy(const BDChain& chain, std::size_t start, std::uint64_t steps,
                                        std::uint64_t seed);

}  // namespace emwalk
