#pragma once

#include <cstddef>
#include <span>

#include "emwalk/graph.hpp"

namespace emwalk {

enum class WalkKind { Lazy, Simple };

namespace kernels {

// One walk step out = in * P (Lazy) or in * Q (Simple) on snapshot g.
//
// Isolated vertices keep their mass under both kinds. `in` and `out` must
// have length g.vertex_count() and must not alias.
//
// The OpenMP kernels pull: out[v] is a sum over v's neighbors, each entry is
// written by exactly one thread in a fixed order, so results do not depend on
// the thread count. The serial kernels push mass along edges instead and
// serve as the reference implementation.

void step_omp(WalkKind kind, const GraphState& g, std::span<const double> in, std::span<double> out);
void step_serial(WalkKind kind, const GraphState& g, std::span<const double> in, std::span<double> out);

// Row-major batch of `rows` distributions, each of length n; steps every row.
void batch_step_omp(WalkKind kind, const GraphState& g, std::span<const double> in, std::span<double> out,
                    std::size_t rows);
void batch_step_serial(WalkKind kind, const GraphState& g, std::span<const double> in, std::span<double> out,
                       std::size_t rows);

// Total variation of each row of `batch` against `target`; out has `rows` entries.
void batch_tv_omp(std::span<const double> batch, std::span<const double> target, std::span<double> out,
                  std::size_t rows);

}  // namespace kernels
}  // namespace emwalk
