#include "emwalk/snapshot_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace emwalk {

void write_snapshot(std::ostream& out, const GraphState& g, std::uint64_t t, std::uint64_t seed) {
  out << g.vertex_count() << ' ' << g.edge_count() << ' ' << t << ' ' << seed << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Snapshot read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("snapshot: missing header line");
  std::istringstream header(line);
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  Snapshot snap;
  if (!(header >> n >> m >> snap.t >> snap.seed)) throw std::runtime_error("snapshot: header must be 'n m t seed'");
  std::string extra;
  if (header >> extra) throw std::runtime_error("snapshot: trailing tokens in header");

  std::vector<Edge> edges;
  edges.reserve(m);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(row >> u >> v) || (row >> extra)) throw std::runtime_error("snapshot: edge lines must be 'u v'");
    if (u >= n || v >= n) throw std::runtime_error("snapshot: edge endpoint out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (edges.size() != m) throw std::runtime_error("snapshot: edge count does not match header");
  try {
    snap.graph = GraphState::from_edges(n, std::move(edges));
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(std::string("snapshot: ") + err.what());
  }
  return snap;
}

void save_snapshot(const std::filesystem::path& path, const GraphState& g, std::uint64_t t, std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_snapshot(out, g, t, seed);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_snapshot(in);
}

}  // namespace emwalk
