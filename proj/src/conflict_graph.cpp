#include "atomgame/conflict_graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace atomgame {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

// One AOD axis: the relative order of the two sources must be the relative
// order of the two targets. Equal/unequal mismatches are splits or merges,
// strict order flips are crossings.
bool axis_conflict(int src_a, int dst_a, int src_b, int dst_b) {
  return sign(src_a - src_b) != sign(dst_a - dst_b);
}

// Below this many movers the OpenMP fork costs more than the pair loop.
constexpr std::size_t kParallelThreshold = 64;

}  // namespace

MoveSet diff_layouts(const Layout& before, const Layout& after) {
  if (before.size() != after.size() || before.grid() != after.grid()) {
    throw std::invalid_argument("layouts differ in atom count or grid");
  }
  MoveSet moves;
  for (Qubit q = 0; q < before.size(); ++q) {
    if (before.at(q) != after.at(q)) {
      moves.push_back(Move{q, before.at(q), after.at(q)});
    }
  }
  return moves;
}

ActiveSet active_participants(const Layout& before, const Layout& after) {
  ActiveSet active;
  const MoveSet moves = diff_layouts(before, after);
  for (const Move& m : moves) {
    active.columns.insert(m.from.col);
    active.columns.insert(m.to.col);
    active.rows.insert(m.from.row);
    active.rows.insert(m.to.row);
  }
  if (moves.empty()) return active;
  for (Qubit q = 0; q < before.size(); ++q) {
    const Cell c = before.at(q);
    if (c != after.at(q) ||
        (active.columns.contains(c.col) && active.rows.contains(c.row))) {
      active.atoms.push_back(q);
    }
  }
  return active;
}

bool conflicts(const Move& a, const Move& b) {
  return axis_conflict(a.from.col, a.to.col, b.from.col, b.to.col) ||
         axis_conflict(a.from.row, a.to.row, b.from.row, b.to.row);
}

ConflictGraph::ConflictGraph(MoveSet moves,
                             std::vector<std::vector<std::size_t>> adjacency)
    : moves_(std::move(moves)), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != moves_.size()) {
    throw std::invalid_argument("adjacency size does not match vertex count");
  }
  std::size_t degree_sum = 0;
  for (const auto& row : adjacency_) degree_sum += row.size();
  edge_count_ = degree_sum / 2;
}

std::size_t ConflictGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& row : adjacency_) best = std::max(best, row.size());
  return best;
}

bool ConflictGraph::adjacent(std::size_t a, std::size_t b) const {
  return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

ConflictGraph build_conflict_graph(const MoveSet& moves) {
  const std::size_t n = moves.size();
  if (n < kParallelThreshold) return build_conflict_graph_serial(moves);
  std::vector<std::vector<std::size_t>> adjacency(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& row = adjacency[static_cast<std::size_t>(i)];
    const Move& mi = moves[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != static_cast<std::size_t>(i) && conflicts(mi, moves[j])) {
        row.push_back(j);
      }
    }
  }
  return ConflictGraph(moves, std::move(adjacency));
}

ConflictGraph build_conflict_graph_serial(const MoveSet& moves) {
  const std::size_t n = moves.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (conflicts(moves[i], moves[j])) {
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
      }
    }
  }
  // j is visited in ascending order from both sides, so rows are sorted.
  return ConflictGraph(moves, std::move(adjacency));
}

std::vector<std::size_t> greedy_color(const ConflictGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (graph.degree(a) != graph.degree(b)) {
      return graph.degree(a) > graph.degree(b);
    }
    return graph.moves()[a].atom < graph.moves()[b].atom;
  });

  constexpr std::size_t kUncolored = static_cast<std::size_t>(-1);
  std::vector<std::size_t> color(n, kUncolored);
  std::vector<char> taken;
  for (const std::size_t v : order) {
    taken.assign(graph.degree(v) + 1, 0);
    for (const std::size_t u : graph.neighbors(v)) {
      if (color[u] < taken.size()) taken[color[u]] = 1;
    }
    color[v] = static_cast<std::size_t>(
        std::find(taken.begin(), taken.end(), 0) - taken.begin());
  }
  return color;
}

std::size_t estimate_moves(const ConflictGraph& graph) {
  if (graph.vertex_count() == 0) return 0;
  // ceil(log2(1 + E)) == bit width of E for E >= 0.
  const std::size_t edges = graph.edge_count();
  return std::max<std::size_t>(1, std::bit_width(edges));
}

std::vector<MoveSet> schedule_moves(const Layout& before, const Layout& after) {
  const ConflictGraph graph = build_conflict_graph(diff_layouts(before, after));
  const std::vector<std::size_t> color = greedy_color(graph);
  std::size_t n_colors = 0;
  for (const std::size_t c : color) n_colors = std::max(n_colors, c + 1);
  std::vector<MoveSet> groups(n_colors);
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    groups[color[v]].push_back(graph.moves()[v]);
  }
  return groups;
}

nlohmann::json to_json(const ConflictGraph& graph) {
  nlohmann::json vertices = nlohmann::json::array();
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const Move& m = graph.moves()[v];
    vertices.push_back({{"atom", m.atom},
                        {"from", {m.from.col, m.from.row}},
                        {"to", {m.to.col, m.to.row}}});
    for (const std::size_t u : graph.neighbors(v)) {
      if (u > v) edges.push_back({m.atom, graph.moves()[u].atom});
    }
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

}  // namespace atomgame
