// Serial reference kernels against their OpenMP counterparts, plus the
// O(changes) evolution step against the O(n^2) per-slot scan.
//
//   OMP_NUM_THREADS=4 ./bench/emwalk_bench --benchmark_filter=Step

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "emwalk/evolution.hpp"
#include "emwalk/kernels.hpp"
#include "emwalk/model.hpp"
#include "emwalk/rng.hpp"

namespace {

using emwalk::GraphState;
using emwalk::WalkKind;
namespace k = emwalk::kernels;

GraphState sample_graph(std::size_t n, double p_tilde) {
  const auto params = emwalk::ModelParams::make(n, p_tilde, 1.0 - p_tilde);
  return emwalk::Trajectory(params, 42).at(0);
}

std::vector<double> uniform(std::size_t n, std::size_t rows = 1) {
  return std::vector<double>(n * rows, 1.0 / static_cast<double>(n));
}

double dense_p(const benchmark::State& state) { return static_cast<double>(state.range(1)) / 100.0; }

template <void (*Step)(WalkKind, const GraphState&, std::span<const double>, std::span<double>)>
void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = sample_graph(n, dense_p(state));
  auto in = uniform(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    Step(WalkKind::Lazy, g, in, out);
    in.swap(out);
    benchmark::DoNotOptimize(in.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * g.edge_count() + n));
}

template <void (*Step)(WalkKind, const GraphState&, std::span<const double>, std::span<double>, std::size_t)>
void BM_BatchStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = sample_graph(n, dense_p(state));
  auto in = uniform(n, n);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    Step(WalkKind::Lazy, g, in, out, n);
    in.swap(out);
    benchmark::DoNotOptimize(in.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * (2 * g.edge_count() + n)));
}

void BM_BatchTv(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto batch = uniform(n, n);
  std::vector<double> target(n, 0.0);
  target[0] = 1.0;
  std::vector<double> out(n);
  for (auto _ : state) {
    k::batch_tv_omp(batch, target, out, n);
    benchmark::DoNotOptimize(out.data());
  }
}

template <emwalk::EvolveResult (*Evolve)(const GraphState&, const emwalk::ModelParams&, emwalk::CounterRng&)>
void BM_Evolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double nd = static_cast<double>(n);
  // Sparse, slowly changing edge set: where the per-slot scan is wasteful.
  const auto params = emwalk::ModelParams::make(n, 1.0 / (nd * nd), 1.0 / nd);
  auto g = emwalk::Trajectory(params, 7).at(0);
  emwalk::CounterRng rng(11);
  for (auto _ : state) {
    auto r = Evolve(g, params, rng);
    g = std::move(r.graph);
    benchmark::DoNotOptimize(g.edge_count());
  }
}

// Args: {n, 100 * p~}
BENCHMARK(BM_Step<k::step_serial>)->Name("Step/serial")->Args({1024, 5})->Args({4096, 1})->Args({4096, 10});
BENCHMARK(BM_Step<k::step_omp>)->Name("Step/omp")->Args({1024, 5})->Args({4096, 1})->Args({4096, 10});
BENCHMARK(BM_BatchStep<k::batch_step_serial>)->Name("BatchStep/serial")->Args({256, 20})->Args({512, 5});
BENCHMARK(BM_BatchStep<k::batch_step_omp>)->Name("BatchStep/omp")->Args({256, 20})->Args({512, 5});
BENCHMARK(BM_BatchTv)->Name("BatchTv/omp")->Arg(256)->Arg(512);
BENCHMARK(BM_Evolve<emwalk::evolve_step_reference>)->Name("Evolve/reference")->Arg(500)->Arg(2000);
BENCHMARK(BM_Evolve<emwalk::evolve_step>)->Name("Evolve/sparse")->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
