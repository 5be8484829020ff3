#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "emwalk/graph.hpp"

namespace emwalk {

/// Edge-list snapshot file:
///
///     n m t seed
///     u v
///     ...
///
/// one "u v" line per edge (u < v, lexicographic order).
struct Snapshot {
  GraphState graph;
  std::uint64_t t = 0;
  std::uint64_t seed = 0;
};

void write_snapshot(std::ostream& out, const GraphState& g, std::uint64_t t, std::uint64_t seed);
/// Throws std::runtime_error on malformed input (bad header, wrong edge count,
/// invalid edges).
Snapshot read_snapshot(std::istream& in);

void save_snapshot(const std::filesystem::path& path, const GraphState& g, std::uint64_t t, std::uint64_t seed);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace emwalk
