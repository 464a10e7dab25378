#include <gtest/gtest.h>

#include <random>
#include <set>

#include "atomgame/conflict_graph.hpp"
#include "oracles.hpp"

using namespace atomgame;

namespace {

MoveSet random_moves(std::mt19937_64& rng, std::size_t n, int span) {
  std::uniform_int_distribution<int> coord(0, span - 1);
  MoveSet moves;
  for (std::size_t i = 0; i < n; ++i) {
    moves.push_back({static_cast<Qubit>(i), {coord(rng), coord(rng)},
                     {coord(rng), coord(rng)}});
  }
  return moves;
}

// Random graph realised as a conflict graph: vertices keep their source cell
// and edges follow the predicate, so only the structure varies.
ConflictGraph random_graph(std::mt19937_64& rng, std::size_t n) {
  return build_conflict_graph_serial(random_moves(rng, n, 6));
}

bool proper(const ConflictGraph& g, const std::vector<std::size_t>& color) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (const std::size_t u : g.neighbors(v)) {
      if (color[u] == color[v]) return false;
    }
  }
  return true;
}

std::size_t color_count(const std::vector<std::size_t>& color) {
  return std::set<std::size_t>(color.begin(), color.end()).size();
}

const Move kPaperPairs[4][2] = {
    {{0, {2, 0}, {6, 0}}, {1, {1, 2}, {5, 1}}},
    {{0, {2, 0}, {6, 4}}, {1, {1, 2}, {5, 1}}},
    {{0, {2, 0}, {5, 1}}, {1, {1, 2}, {4, 4}}},
    {{0, {2, 0}, {5, 1}}, {1, {1, 2}, {5, 4}}},
};
const bool kPaperConflicts[4] = {false, true, false, true};

}  // namespace

TEST(Conflicts, PaperExamples) {
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(conflicts(kPaperPairs[i][0], kPaperPairs[i][1]), kPaperConflicts[i])
        << "pair " << i;
  }
}

TEST(Conflicts, PaperExamplesAsGraphs) {
  for (int i = 0; i < 4; ++i) {
    const ConflictGraph g = build_conflict_graph({kPaperPairs[i][0], kPaperPairs[i][1]});
    EXPECT_EQ(g.edge_count(), kPaperConflicts[i] ? 1u : 0u);
  }
}

TEST(Conflicts, SymmetricAndMatchesOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5000; ++trial) {
    const MoveSet m = random_moves(rng, 2, 5);
    const bool ab = conflicts(m[0], m[1]);
    EXPECT_EQ(ab, conflicts(m[1], m[0]));
    EXPECT_EQ(ab, oracle::conflict({m[0].from.col, m[0].from.row},
                                   {m[0].to.col, m[0].to.row},
                                   {m[1].from.col, m[1].from.row},
                                   {m[1].to.col, m[1].to.row}));
  }
}

TEST(ConflictGraph, SingleMove) {
  const ConflictGraph g = build_conflict_graph({{0, {0, 0}, {1, 1}}});
  EXPECT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ConflictGraph, ParallelColumnTranslationHasNoEdges) {
  MoveSet moves;
  for (int r = 0; r < 6; ++r) moves.push_back({static_cast<Qubit>(r), {2, r}, {5, r}});
  EXPECT_EQ(build_conflict_graph(moves).edge_count(), 0u);
}

TEST(ConflictGraph, ParallelKernelMatchesSerial) {
  std::mt19937_64 rng(8);
  for (const std::size_t n : {0u, 1u, 5u, 63u, 64u, 65u, 200u, 700u}) {
    const MoveSet m = random_moves(rng, n, 12);
    const ConflictGraph serial = build_conflict_graph_serial(m);
    const ConflictGraph parallel = build_conflict_graph(m);
    EXPECT_EQ(serial, parallel) << "n=" << n;
    std::size_t degree_sum = 0;
    for (std::size_t v = 0; v < serial.vertex_count(); ++v) {
      degree_sum += serial.degree(v);
      for (const std::size_t u : serial.neighbors(v)) {
        EXPECT_TRUE(serial.adjacent(u, v));
        EXPECT_TRUE(conflicts(m[u], m[v]));
      }
    }
    EXPECT_EQ(degree_sum, 2 * serial.edge_count());
  }
}

TEST(GreedyColor, EmptyAndEdgeless) {
  EXPECT_TRUE(greedy_color(ConflictGraph{}).empty());
  MoveSet moves;
  for (int r = 0; r < 4; ++r) moves.push_back({static_cast<Qubit>(r), {0, r}, {1, r}});
  EXPECT_EQ(color_count(greedy_color(build_conflict_graph(moves))), 1u);
}

TEST(GreedyColor, Triangle) {
  // Three atoms in one source column scattered to three target columns.
  const MoveSet moves{{0, {0, 0}, {1, 0}}, {1, {0, 1}, {2, 1}}, {2, {0, 2}, {3, 2}}};
  const ConflictGraph g = build_conflict_graph(moves);
  ASSERT_EQ(g.edge_count(), 3u);
  const auto color = greedy_color(g);
  EXPECT_TRUE(proper(g, color));
  EXPECT_EQ(color_count(color), oracle::chromatic_number(3, {{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(color_count(color), 3u);
}

TEST(GreedyColor, BoundedByMaxDegreeOverSeeds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const ConflictGraph g = random_graph(rng, 20);
    const auto color = greedy_color(g);
    ASSERT_TRUE(proper(g, color));
    EXPECT_LE(color_count(color), g.max_degree() + 1);
  }
}

TEST(GreedyColor, ProperOnErdosRenyiGraphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution edge(0.3);
    const std::size_t n = 20;
    MoveSet moves;
    for (std::size_t i = 0; i < n; ++i) {
      moves.push_back({static_cast<Qubit>(i), {0, static_cast<int>(i)}, {1, static_cast<int>(i)}});
    }
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (edge(rng)) {
          adj[i].push_back(j);
          adj[j].push_back(i);
        }
      }
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    const ConflictGraph g(moves, adj);
    const auto color = greedy_color(g);
    ASSERT_TRUE(proper(g, color));
    EXPECT_LE(color_count(color), g.max_degree() + 1);
  }
}

TEST(GreedyColor, NeverBelowChromaticNumber) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const ConflictGraph g = random_graph(rng, 6);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      for (const std::size_t u : g.neighbors(v)) {
        if (u > v) edges.emplace_back(v, u);
      }
    }
    const auto color = greedy_color(g);
    ASSERT_TRUE(proper(g, color));
    EXPECT_GE(color_count(color), oracle::chromatic_number(6, edges));
  }
}

TEST(EstimateMoves, Formula) {
  EXPECT_EQ(estimate_moves(ConflictGraph{}), 0u);
  EXPECT_EQ(estimate_moves(build_conflict_graph({{0, {0, 0}, {1, 0}}})), 1u);

  // Four atoms in one source row fanned out to reversed columns: every pair
  // crosses (6 edges); a fifth mover merging into atom 0's target column
  // conflicts with atom 0 alone, giving 7.
  MoveSet moves;
  for (int c = 0; c < 4; ++c) {
    moves.push_back({static_cast<Qubit>(c), {c, 0}, {7 - c, 0}});
  }
  ConflictGraph g = build_conflict_graph(moves);
  ASSERT_EQ(g.edge_count(), 6u);
  EXPECT_EQ(estimate_moves(g), 3u);
  moves.push_back({4, {9, 5}, {9, 6}});
  g = build_conflict_graph(moves);
  ASSERT_EQ(g.edge_count(), 6u);
  moves.back() = {4, {9, 5}, {7, 6}};
  g = build_conflict_graph(moves);
  ASSERT_EQ(g.edge_count(), 7u);
  EXPECT_EQ(estimate_moves(g), 3u);  // max(1, ceil(log2 8))
}

TEST(EstimateMoves, MonotoneInEdges) {
  std::mt19937_64 rng(6);
  std::vector<std::pair<std::size_t, std::size_t>> samples;
  for (int trial = 0; trial < 300; ++trial) {
    const ConflictGraph g = build_conflict_graph(random_moves(rng, 1 + rng() % 30, 8));
    samples.emplace_back(g.edge_count(), estimate_moves(g));
  }
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    EXPECT_LE(samples[i - 1].second, samples[i].second);
  }
}

TEST(ActiveParticipants, CaughtAtIntersections) {
  const Grid grid{3, 3, 1.0};
  EXPECT_TRUE(active_participants(Layout(grid, {{0, 0}}), Layout(grid, {{0, 0}})).atoms.empty());

  const Layout a(grid, {{0, 0}, {1, 1}});
  const Layout b(grid, {{2, 0}, {1, 1}});
  EXPECT_EQ(active_participants(a, b).atoms, (std::vector<Qubit>{0}));

  const Layout c(grid, {{0, 0}, {2, 0}});
  const Layout d(grid, {{2, 2}, {2, 0}});
  const ActiveSet act = active_participants(c, d);
  EXPECT_EQ(act.atoms, (std::vector<Qubit>{0, 1}));
  EXPECT_EQ(act.columns, (std::set<int>{0, 2}));
  EXPECT_EQ(act.rows, (std::set<int>{0, 2}));
}

TEST(ScheduleMoves, IdentityIsEmpty) {
  const Layout l(Grid{2, 2, 1.0}, {{0, 0}, {1, 1}});
  EXPECT_TRUE(schedule_moves(l, l).empty());
}

TEST(ScheduleMoves, ThreeColorableFanOut) {
  // One column scattered to three columns in reverse row order: pairwise
  // conflicting, so exactly three groups.
  const Grid grid{4, 4, 1.0};
  const Layout before(grid, {{0, 0}, {0, 1}, {0, 2}});
  const Layout after(grid, {{3, 2}, {2, 1}, {1, 0}});
  const auto groups = schedule_moves(before, after);
  EXPECT_EQ(groups.size(), 3u);
}

TEST(ScheduleMoves, ReplayReachesTarget) {
  std::mt19937_64 rng(13);
  const Grid grid{3, 3, 1.0};
  for (int trial = 0; trial < 300; ++trial) {
    const Layout before = initial_layout(grid, 4, LayoutMode::kRandom, rng());
    const Layout after = initial_layout(grid, 4, LayoutMode::kRandom, rng());
    const auto groups = schedule_moves(before, after);
    const ConflictGraph g = build_conflict_graph(diff_layouts(before, after));
    EXPECT_LE(groups.size(), g.max_degree() + 1);

    // Atoms move group by group; a group's targets may be vacated only by
    // later groups, so track positions directly rather than via Layout.
    std::vector<Cell> pos(before.positions().begin(), before.positions().end());
    for (const MoveSet& group : groups) {
      std::set<Cell> group_targets;
      for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) {
          EXPECT_FALSE(conflicts(group[i], group[j]));
        }
        EXPECT_EQ(pos[group[i].atom], group[i].from);
        EXPECT_TRUE(group_targets.insert(group[i].to).second);
        pos[group[i].atom] = group[i].to;
      }
    }
    EXPECT_TRUE(std::equal(pos.begin(), pos.end(), after.positions().begin()));
  }
}

TEST(ConflictGraph, JsonShape) {
  const ConflictGraph g = build_conflict_graph({kPaperPairs[1][0], kPaperPairs[1][1]});
  EXPECT_EQ(to_json(g).dump(),
            R"({"edges":[[0,1]],"vertices":[{"atom":0,"from":[2,0],"to":[6,4]},)"
            R"({"atom":1,"from":[1,2],"to":[5,1]}]})");
}
