#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "atomgame/geometry.hpp"
#include "json.hpp"

namespace atomgame {

/// One atom relocation inside a layout change.
struct Move {
  Qubit atom = 0;
  Cell from;
  Cell to;

  friend bool operator==(const Move&, const Move&) = default;
};

using MoveSet = std::vector<Move>;

/// Moves of every atom whose cell differs between `before` and `after`,
/// ascending by atom id.
MoveSet diff_layouts(const Layout& before, const Layout& after);

/// Atoms touched by a crossed-AOD reconfiguration: the movers plus any
/// stationary atom sitting at the intersection of an active column and an
/// active row.
struct ActiveSet {
  std::set<int> columns;
  std::set<int> rows;
  std::vector<Qubit> atoms;  // ascending
};

ActiveSet active_participants(const Layout& before, const Layout& after);

/// True when the two moves cannot share a single AOD step: a row/column would
/// have to split or merge (many-to-one), or two rows/columns would swap order
/// (crossing). Symmetric.
bool conflicts(const Move& a, const Move& b);

/// Undirected conflict graph over moving atoms. Vertex i stands for
/// `moves()[i]`; adjacency lists are sorted and symmetric.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  ConflictGraph(MoveSet moves, std::vector<std::vector<std::size_t>> adjacency);

  std::size_t vertex_count() const { return moves_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const;
  bool adjacent(std::size_t a, std::size_t b) const;

  const MoveSet& moves() const { return moves_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_[v];
  }

  friend bool operator==(const ConflictGraph&, const ConflictGraph&) = default;

 private:
  MoveSet moves_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// OpenMP kernel: each vertex's adjacency row is computed independently.
ConflictGraph build_conflict_graph(const MoveSet& moves);

/// Single-threaded reference over the i < j pair triangle. Kept for testing
/// and benchmarking the parallel kernel.
ConflictGraph build_conflict_graph_serial(const MoveSet& moves);

/// Greedy coloring: vertices in descending-degree order (ties by atom id),
/// each taking the smallest color unused by its colored neighbors.
/// Returns one color per vertex.
std::vector<std::size_t> greedy_color(const ConflictGraph& graph);

/// Estimated number of parallel AOD moves for a reconfiguration:
/// 0 for no movers, else max(1, ceil(log2(1 + |E|))).
std::size_t estimate_moves(const ConflictGraph& graph);

/// Parallel move groups (color classes) that carry `before` into `after`.
/// Groups are ordered by color id; moves in a group by atom id.
std::vector<MoveSet> schedule_moves(const Layout& before, const Layout& after);

nlohmann::json to_json(const ConflictGraph& graph);

}  // namespace atomgame
