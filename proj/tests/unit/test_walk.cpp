#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "emwalk/evolution.hpp"
#include "emwalk/kernels.hpp"
#include "emwalk/walk.hpp"
#include "oracles.hpp"

using emwalk::Distribution;
using emwalk::GraphState;
using emwalk::ModelParams;
using emwalk::Trajectory;
using emwalk::WalkKind;

namespace {

Distribution random_distribution(std::size_t n, std::mt19937_64& gen) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) total += x = e(gen);
  for (auto& x : v) x /= total;
  return Distribution(std::move(v));
}

void expect_near(std::span<const double> a, std::span<const double> b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

}  // namespace

TEST(DistributionType, Validation) {
  EXPECT_NO_THROW(Distribution({0.25, 0.75}));
  EXPECT_THROW(Distribution({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Distribution({-0.1, 1.1}), std::invalid_argument);
  EXPECT_THROW(Distribution({std::nan(""), 1.0}), std::invalid_argument);
  EXPECT_THROW(Distribution(std::vector<double>{}), std::invalid_argument);
  EXPECT_EQ(Distribution::point_mass(3, 1)[1], 1.0);
  EXPECT_DOUBLE_EQ(Distribution::uniform(4)[2], 0.25);
}

TEST(StationaryDist, Path) {
  const auto r = emwalk::stationary_dist(emwalk::path_graph(3));
  EXPECT_FALSE(r.degenerate);
  expect_near(r.pi.values(), std::vector<double>{0.25, 0.5, 0.25}, 1e-15);
}

TEST(StationaryDist, CompleteAndEmpty) {
  const auto k = emwalk::stationary_dist(emwalk::complete_graph(7));
  for (double x : k.pi.values()) EXPECT_NEAR(x, 1.0 / 7.0, 1e-15);
  const auto e = emwalk::stationary_dist(GraphState(5));
  EXPECT_TRUE(e.degenerate);
  for (double x : e.pi.values()) EXPECT_DOUBLE_EQ(x, 0.2);
}

TEST(Step, CenterOfPath) {
  const auto mu = emwalk::step(Distribution::point_mass(3, 1), emwalk::path_graph(3), WalkKind::Lazy);
  expect_near(mu.values(), std::vector<double>{0.25, 0.5, 0.25}, 1e-15);
  const auto nu = emwalk::step(Distribution::point_mass(3, 1), emwalk::path_graph(3), WalkKind::Simple);
  expect_near(nu.values(), std::vector<double>{0.5, 0.0, 0.5}, 1e-15);
}

TEST(Step, IsolatedVertexKeepsMass) {
  const auto g = GraphState::from_edges(3, {{0, 1}});
  for (auto kind : {WalkKind::Lazy, WalkKind::Simple}) {
    const auto mu = emwalk::step(Distribution::point_mass(3, 2), g, kind);
    EXPECT_EQ(mu[2], 1.0);
  }
}

TEST(Step, StationaryIsFixedPoint) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_graph(25, 0.15, seed);
    const auto pi = emwalk::stationary_dist(g).pi;
    for (auto kind : {WalkKind::Lazy, WalkKind::Simple}) expect_near(emwalk::step(pi, g, kind).values(), pi.values(), 1e-12);
  }
}

TEST(Step, RejectsDimensionMismatch) {
  EXPECT_THROW(emwalk::step(Distribution::uniform(3), GraphState(4), WalkKind::Lazy), std::length_error);
}

TEST(Step, MatchesDenseMatrixProduct) {
  std::mt19937_64 gen(1);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = oracle::random_graph(16, 0.25, seed);
    const auto mu = random_distribution(16, gen);
    for (auto kind : {WalkKind::Lazy, WalkKind::Simple}) {
      const Eigen::RowVectorXd expected = oracle::row(mu.values()) * oracle::transition_matrix(g, kind);
      expect_near(emwalk::step(mu, g, kind).values(), std::span<const double>(expected.data(), 16), 1e-14);
    }
  }
}

TEST(Step, LazyIsHalfIdentityPlusSimple) {
  std::mt19937_64 gen(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_graph(30, 0.1, seed);
    const auto mu = random_distribution(30, gen);
    const auto lazy = emwalk::step(mu, g, WalkKind::Lazy);
    const auto simple = emwalk::step(mu, g, WalkKind::Simple);
    for (std::size_t x = 0; x < 30; ++x) EXPECT_NEAR(lazy[x], 0.5 * (mu[x] + simple[x]), 1e-12);
  }
}

TEST(Kernels, OmpMatchesSerialReference) {
  std::mt19937_64 gen(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(200, 0.05, seed);
    const auto mu = random_distribution(200, gen);
    for (auto kind : {WalkKind::Lazy, WalkKind::Simple}) {
      std::vector<double> a(200), b(200);
      emwalk::kernels::step_omp(kind, g, mu.values(), a);
      emwalk::kernels::step_serial(kind, g, mu.values(), b);
      expect_near(a, b, 1e-15);
    }
  }
}

TEST(Kernels, BatchMatchesRowByRow) {
  std::mt19937_64 gen(4);
  const auto g = oracle::random_graph(50, 0.1, 4);
  const std::size_t rows = 5;
  std::vector<double> in;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto mu = random_distribution(50, gen);
    in.insert(in.end(), mu.values().begin(), mu.values().end());
  }
  std::vector<double> omp(in.size()), serial(in.size()), single(50);
  emwalk::kernels::batch_step_omp(WalkKind::Lazy, g, in, omp, rows);
  emwalk::kernels::batch_step_serial(WalkKind::Lazy, g, in, serial, rows);
  expect_near(omp, serial, 1e-15);
  for (std::size_t r = 0; r < rows; ++r) {
    emwalk::kernels::step_serial(WalkKind::Lazy, g, std::span<const double>(in).subspan(r * 50, 50), single);
    expect_near(std::span<const double>(omp).subspan(r * 50, 50), single, 1e-15);
  }
  std::vector<double> tv(rows);
  const auto pi = emwalk::stationary_dist(g).pi;
  emwalk::kernels::batch_tv_omp(omp, pi.values(), tv, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    EXPECT_NEAR(tv[r], emwalk::tv_distance(std::span<const double>(omp).subspan(r * 50, 50), pi.values()), 1e-15);
  }
}

TEST(Propagate, ZeroStepsReturnsStart) {
  Trajectory traj(ModelParams::make(10, 0.1, 0.1), 1);
  const auto mu = emwalk::propagate(Distribution::point_mass(10, 3), traj, 0, WalkKind::Lazy);
  EXPECT_EQ(mu[3], 1.0);
}

TEST(Propagate, StaticTrajectoryEqualsRepeatedSteps) {
  const auto g = oracle::random_graph(12, 0.4, 5);
  Trajectory traj(ModelParams::make(12, 0.0, 0.0), 1, g);
  Distribution expected = Distribution::point_mass(12, 0);
  for (int t = 0; t < 7; ++t) expected = emwalk::step(expected, g, WalkKind::Lazy);
  const auto mu = emwalk::propagate(Distribution::point_mass(12, 0), traj, 7, WalkKind::Lazy);
  expect_near(mu.values(), expected.values(), 1e-15);
}

TEST(Propagate, MatchesDenseProductOverTrajectory) {
  Trajectory traj(ModelParams::make(8, 0.3, 0.4), 17);
  std::mt19937_64 gen(6);
  const auto mu0 = random_distribution(8, gen);
  Eigen::RowVectorXd expected = oracle::row(mu0.values());
  for (std::size_t t = 1; t <= 5; ++t) expected = expected * oracle::transition_matrix(traj.at(t), WalkKind::Lazy);
  std::vector<std::size_t> probed;
  const auto mu = emwalk::propagate(mu0, traj, 5, WalkKind::Lazy,
                                    [&](std::size_t t, const Distribution& d, const GraphState& g) {
                                      probed.push_back(t);
                                      EXPECT_EQ(&g, &traj.at(t));
                                      EXPECT_NEAR(d.mass(), 1.0, 1e-12);
                                    });
  expect_near(mu.values(), std::span<const double>(expected.data(), 8), 1e-14);
  EXPECT_EQ(probed, (std::vector<std::size_t>{1, 2, 3, 4, 5}));
}

TEST(Propagate, MassConservedOverLongRuns) {
  Trajectory traj(ModelParams::make(40, 0.05, 0.2), 3);
  double worst = 0.0;
  bool nonnegative = true;
  emwalk::propagate(Distribution::point_mass(40, 0), traj, 10000, WalkKind::Lazy,
                    [&](std::size_t, const Distribution& d, const GraphState&) {
                      double total = 0.0;
                      for (double x : d.values()) {
                        total += x;
                        nonnegative = nonnegative && x >= 0.0;
                      }
                      worst = std::max(worst, std::abs(total - 1.0));
                    });
  EXPECT_LE(worst, 1e-9);
  EXPECT_TRUE(nonnegative);
}

TEST(TvDistance, Basics) {
  const Distribution a({0.5, 0.5});
  const Distribution b({1.0, 0.0});
  EXPECT_DOUBLE_EQ(emwalk::tv_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(emwalk::tv_distance(a, b), 0.5);
  EXPECT_DOUBLE_EQ(emwalk::tv_distance(Distribution({1.0, 0.0}), Distribution({0.0, 1.0})), 1.0);
  EXPECT_THROW(emwalk::tv_distance(a, Distribution::uniform(3)), std::length_error);
}

TEST(L2PiDistance, Basics) {
  const auto pi = Distribution::uniform(4);
  EXPECT_DOUBLE_EQ(emwalk::l2pi_distance(pi, pi), 0.0);
  EXPECT_NEAR(emwalk::l2pi_distance(Distribution::point_mass(4, 0), pi), std::sqrt(3.0), 1e-15);
  const Distribution pi0({0.5, 0.5, 0.0});
  EXPECT_EQ(emwalk::l2pi_distance(Distribution::point_mass(3, 2), pi0), std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(emwalk::l2pi_distance(Distribution({0.5, 0.5, 0.0}), pi0), 0.0);
}

TEST(L2PiDistance, BoundsTv) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + gen() % 30;
    const auto mu = random_distribution(n, gen);
    const auto pi = random_distribution(n, gen);
    EXPECT_LE(emwalk::tv_distance(mu, pi), emwalk::l2pi_distance(mu, pi) + 1e-12);
  }
}

TEST(StaticWalk, TvNonIncreasingOnConnectedGraph) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(20, 0.3, seed);
    if (!g.is_connected()) continue;
    const auto pi = emwalk::stationary_dist(g).pi;
    auto mu = Distribution::point_mass(20, 0);
    double prev = emwalk::tv_distance(mu, pi);
    for (int t = 0; t < 60; ++t) {
      mu = emwalk::step(mu, g, WalkKind::Lazy);
      const double tv = emwalk::tv_distance(mu, pi);
      EXPECT_LE(tv, prev + 1e-15);
      prev = tv;
    }
  }
}

TEST(DistributionBatch, RowsAdvanceLikeSingleWalks) {
  const auto g = oracle::random_graph(30, 0.2, 9);
  const std::vector<emwalk::Vertex> starts = {0, 7, 29};
  emwalk::DistributionBatch batch(30, starts);
  std::vector<Distribution> singles;
  for (auto x : starts) singles.push_back(Distribution::point_mass(30, x));
  for (int t = 0; t < 15; ++t) {
    batch.step(g, WalkKind::Lazy);
    for (auto& mu : singles) mu = emwalk::step(mu, g, WalkKind::Lazy);
  }
  const auto pi = emwalk::stationary_dist(g).pi;
  const auto tv = batch.tv_to(pi.values());
  const auto l2 = batch.l2pi_sq_to(pi.values());
  for (std::size_t r = 0; r < starts.size(); ++r) {
    expect_near(batch.row(r), singles[r].values(), 1e-15);
    EXPECT_NEAR(tv[r], emwalk::tv_distance(singles[r], pi), 1e-15);
    const double d = emwalk::l2pi_distance(singles[r], pi);
    EXPECT_NEAR(l2[r], d * d, 1e-12);
  }
  EXPECT_THROW(emwalk::DistributionBatch(3, std::vector<emwalk::Vertex>{3}), std::out_of_range);
}
