#include "emwalk/bd_chain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "emwalk/rng.hpp"

namespace emwalk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t next_state(const BDChain& chain, std::size_t k, CounterRng& rng) {
  const double u = rng.uniform();
  if (u < chain.up(k)) return k + 1;
  if (u < chain.up(k) + chain.down(k)) return k - 1;
  return k;
}

}  // namespace

BDChain BDChain::make(std::vector<double> up, std::vector<double> down) {
  if (up.empty() || up.size() != down.size()) throw std::invalid_argument("up/down rate vectors must match and be non-empty");
  const std::size_t m = up.size() - 1;
  for (std::size_t k = 0; k <= m; ++k) {
    if (!(up[k] >= 0.0) || !(down[k] >= 0.0) || up[k] + down[k] > 1.0 + 1e-15) {
      throw std::invalid_argument("birth/death rates must be >= 0 with b_k + d_k <= 1");
    }
  }
  if (up[m] != 0.0) throw std::invalid_argument("b_m must be 0");
  if (down[0] != 0.0) throw std::invalid_argument("d_0 must be 0");
  return BDChain(std::move(up), std::move(down));
}

BDChain BDChain::constant(std::size_t m, double up, double down) {
  std::vector<double> b(m + 1, up);
  std::vector<double> d(m + 1, down);
  b[m] = 0.0;
  d[0] = 0.0;
  return make(std::move(b), std::move(d));
}

BDChain BDChain::with_absorbing_ends() const {
  std::vector<double> b = up_;
  std::vector<double> d = down_;
  b.front() = 0.0;
  d.back() = 0.0;
  return BDChain(std::move(b), std::move(d));
}

bool BDChain::irreducible() const noexcept {
  const std::size_t m = ceiling();
  for (std::size_t k = 0; k < m; ++k) {
    if (up_[k] <= 0.0 || down_[k + 1] <= 0.0) return false;
  }
  return true;
}

Distribution bd_stationary(const BDChain& chain) {
  if (!chain.irreducible()) throw std::domain_error("stationary distribution needs an irreducible chain");
  const std::size_t m = chain.ceiling();
  // Work in logs so long chains with large b/d ratios do not overflow.
  std::vector<double> log_w(m + 1, 0.0);
  for (std::size_t k = 1; k <= m; ++k) log_w[k] = log_w[k - 1] + std::log(chain.up(k - 1)) - std::log(chain.down(k));
  double top = log_w[0];
  for (double v : log_w) top = std::max(top, v);
  std::vector<double> w(m + 1);
  double total = 0.0;
  for (std::size_t k = 0; k <= m; ++k) total += w[k] = std::exp(log_w[k] - top);
  for (double& v : w) v /= total;
  return Distribution(std::move(w));
}

std::vector<double> bd_mean_hitting_times(const BDChain& chain, std::span<const std::size_t> targets) {
  const std::size_t m = chain.ceiling();
  std::vector<std::uint8_t> is_target(m + 1, 0);
  for (auto t : targets) {
    if (t > m) throw std::out_of_range("target state outside chain");
    is_target[t] = 1;
  }

  // States that can reach a target at all.
  std::vector<std::uint8_t> reaches(is_target);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k <= m; ++k) {
      if (reaches[k]) continue;
      if ((k < m && chain.up(k) > 0.0 && reaches[k + 1]) || (k > 0 && chain.down(k) > 0.0 && reaches[k - 1])) {
        reaches[k] = 1;
        changed = true;
      }
    }
  }
  // A state hits the targets a.s. only if it cannot step into a state that never does.
  std::vector<std::uint8_t> finite(reaches);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k <= m; ++k) {
      if (!finite[k] || is_target[k]) continue;
      if ((k < m && chain.up(k) > 0.0 && !finite[k + 1]) || (k > 0 && chain.down(k) > 0.0 && !finite[k - 1])) {
        finite[k] = 0;
        changed = true;
      }
    }
  }

  // (b_k + d_k) h_k - b_k h_{k+1} - d_k h_{k-1} = 1 on finite non-target
  // states; h = 0 elsewhere (couplings into infinite states vanish).
  std::vector<double> lower(m + 1, 0.0);
  std::vector<double> diag(m + 1, 1.0);
  std::vector<double> upper(m + 1, 0.0);
  std::vector<double> rhs(m + 1, 0.0);
  for (std::size_t k = 0; k <= m; ++k) {
    if (is_target[k] || !finite[k]) continue;
    diag[k] = chain.up(k) + chain.down(k);
    if (k > 0 && !is_target[k - 1]) lower[k] = -chain.down(k);
    if (k < m && !is_target[k + 1]) upper[k] = -chain.up(k);
    rhs[k] = 1.0;
  }
  // Thomas algorithm.
  for (std::size_t k = 1; k <= m; ++k) {
    const double factor = lower[k] / diag[k - 1];
    diag[k] -= factor * upper[k - 1];
    rhs[k] -= factor * rhs[k - 1];
  }
  std::vector<double> h(m + 1, 0.0);
  h[m] = rhs[m] / diag[m];
  for (std::size_t k = m; k-- > 0;) h[k] = (rhs[k] - upper[k] * h[k + 1]) / diag[k];
  for (std::size_t k = 0; k <= m; ++k) {
    if (is_target[k]) h[k] = 0.0;
    if (!finite[k]) h[k] = kInf;
  }
  return h;
}

HittingEstimate bd_hitting_time(const BDChain& chain, std::size_t start, std::span<const std::size_t> targets,
                                const HittingMonteCarlo& mc) {
  const std::size_t m = chain.ceiling();
  if (start > m) throw std::out_of_range("start state outside chain");
  std::vector<std::uint8_t> is_target(m + 1, 0);
  for (auto t : targets) {
    if (t > m) throw std::out_of_range("target state outside chain");
    is_target[t] = 1;
  }
  HittingEstimate est;
  est.exact_mean = bd_mean_hitting_times(chain, targets)[start];
  est.trials = mc.trials;

  std::vector<std::int64_t> times(mc.trials, -1);
  const CounterRng root(mc.seed);
  const auto trials = static_cast<std::ptrdiff_t>(mc.trials);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < trials; ++i) {
    CounterRng rng = root.substream(static_cast<std::uint64_t>(i));
    std::size_t z = start;
    for (std::size_t t = 0; t <= mc.horizon; ++t) {
      if (is_target[z]) {
        times[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(t);
        break;
      }
      z = next_state(chain, z, rng);
    }
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t hits = 0;
  for (auto t : times) {
    if (t < 0) continue;
    ++hits;
    const auto x = static_cast<double>(t);
    sum += x;
    sum_sq += x * x;
  }
  est.mc_hit_fraction = mc.trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(mc.trials);
  if (hits == 0) {
    est.mc_mean = kInf;
    est.mc_stderr = kInf;
    return est;
  }
  const auto h = static_cast<double>(hits);
  est.mc_mean = sum / h;
  const double var = hits > 1 ? std::max(0.0, (sum_sq - h * est.mc_mean * est.mc_mean) / (h - 1.0)) : 0.0;
  est.mc_stderr = std::sqrt(var / h);
  return est;
}

HittingEstimate bd_hitting_time(const BDChain& chain, std::size_t start, std::size_t target,
                                const HittingMonteCarlo& mc) {
  const std::size_t targets[] = {target};
  return bd_hitting_time(chain, start, targets, mc);
}

std::vector<std::uint64_t> bd_occupancy(const BDChain& chain, std::size_t start, std::uint64_t steps,
                                        std::uint64_t seed) {
  if (start > chain.ceiling()) throw std::out_of_range("start state outside chain");
  std::vector<std::uint64_t> counts(chain.ceiling() + 1, 0);
  CounterRng rng(seed);
  std::size_t z = start;
  for (std::uint64_t s = 0; s < steps; ++s) {
    z = next_state(chain, z, rng);
    ++counts[z];
  }
  return counts;
}

}  // namespace emwalk
