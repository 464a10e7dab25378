#include "atomgame/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "atomgame/conflict_graph.hpp"
#include "atomgame/errors.hpp"

namespace atomgame {

void CostParams::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(epsilon > 0.0 && epsilon <= 1.0) ||
      !(gamma_accel > 0.0) || !(t_gate >= 0.0)) {
    throw AtomGameError(
        ErrorCode::kInvalidArgument,
        "cost parameters need alpha>=0, beta>=0, 0<epsilon<=1, "
        "gamma_accel>0, t_gate>=0");
  }
}

nlohmann::json to_json(const CostParams& p) {
  return {{"alpha", p.alpha},     {"beta", p.beta},
          {"epsilon", p.epsilon}, {"gamma_accel", p.gamma_accel},
          {"t_gate", p.t_gate},   {"n_atoms", p.n_atoms}};
}

CostParams params_from_json(const nlohmann::json& j,
                            const CostParams& defaults) {
  CostParams p = defaults;
  p.alpha = j.value("alpha", p.alpha);
  p.beta = j.value("beta", p.beta);
  p.epsilon = j.value("epsilon", p.epsilon);
  p.gamma_accel = j.value("gamma_accel", p.gamma_accel);
  p.t_gate = j.value("t_gate", p.t_gate);
  p.n_atoms = j.value("n_atoms", p.n_atoms);
  p.validate();
  return p;
}

double fidelity_cost(double duration, double touches, const CostParams& p) {
  return p.alpha * duration * static_cast<double>(p.n_atoms) + p.beta * touches;
}

MoveCost layout_cost(const Layout& before, const Layout& after,
                     const CostParams& params) {
  const MoveSet moves = diff_layouts(before, after);
  if (moves.empty()) return {};

  const ActiveSet active = active_participants(before, after);
  const auto n_moves =
      static_cast<double>(estimate_moves(build_conflict_graph(moves)));

  // Caught bystanders travel zero distance, so only movers set tau.
  double max_dist = 0.0;
  for (const Move& m : moves) {
    max_dist = std::max(max_dist, distance(before.grid(), m.from, m.to));
  }
  const double tau = std::sqrt(max_dist / params.gamma_accel);

  MoveCost out;
  out.duration = n_moves * tau;
  out.touches = params.epsilon * n_moves * static_cast<double>(active.atoms.size());
  out.cost = fidelity_cost(out.duration, out.touches, params);
  return out;
}

namespace {

bool four_adjacent(Cell a, Cell b) {
  return std::abs(a.col - b.col) + std::abs(a.row - b.row) == 1;
}

// Free 4-neighbor of `anchor` closest to `from`; ties broken by flat index.
std::optional<Cell> nearest_free_neighbor(const Grid& grid,
                                          const std::vector<int>& occ,
                                          Cell anchor, Cell from) {
  static constexpr int kDc[] = {0, -1, 1, 0};  // row-major neighbor order
  static constexpr int kDr[] = {-1, 0, 0, 1};
  std::optional<Cell> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    const Cell c{anchor.col + kDc[k], anchor.row + kDr[k]};
    if (!grid.contains(c) || occ[grid.flat(c)] != -1) continue;
    const double d = distance(grid, c, from);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

Layout pair_adjacent_state(const Layout& layout, const Chunk& chunk) {
  const Grid& grid = layout.grid();
  Chunk pairs = chunk;
  std::sort(pairs.begin(), pairs.end());
  for (const GatePair& g : pairs) {
    if (g.q2 >= layout.size()) {
      throw AtomGameError(ErrorCode::kInvalidArgument,
                          "chunk references atom " + std::to_string(g.q2) +
                              " beyond the layout");
    }
  }

  std::vector<Cell> pos(layout.positions().begin(), layout.positions().end());
  std::vector<int> occ = layout.occupancy();
  auto relocate = [&](Qubit q, Cell to) {
    occ[grid.flat(pos[q])] = -1;
    occ[grid.flat(to)] = static_cast<int>(q);
    pos[q] = to;
  };

  for (const GatePair& g : pairs) {
    const Qubit lo = g.q1;
    const Qubit hi = g.q2;
    if (four_adjacent(pos[lo], pos[hi])) continue;

    if (auto c = nearest_free_neighbor(grid, occ, pos[lo], pos[hi])) {
      relocate(hi, *c);
      continue;
    }
    if (auto c = nearest_free_neighbor(grid, occ, pos[hi], pos[lo])) {
      relocate(lo, *c);
      continue;
    }

    // Both atoms move: search horizontal cell pairs, treating their own
    // cells as vacated.
    occ[grid.flat(pos[lo])] = -1;
    occ[grid.flat(pos[hi])] = -1;
    const double mid_c = 0.5 * (pos[lo].col + pos[hi].col);
    const double mid_r = 0.5 * (pos[lo].row + pos[hi].row);
    std::optional<Cell> best_left;
    double best_d = std::numeric_limits<double>::infinity();
    for (int r = 0; r < grid.rows; ++r) {
      for (int c = 0; c + 1 < grid.cols; ++c) {
        if (occ[grid.flat({c, r})] != -1 || occ[grid.flat({c + 1, r})] != -1) {
          continue;
        }
        const double d =
            std::hypot(c + 0.5 - mid_c, static_cast<double>(r) - mid_r);
        if (d < best_d) {
          best_d = d;
          best_left = Cell{c, r};
        }
      }
    }
    if (!best_left) {
      throw AtomGameError(ErrorCode::kCongestion,
                          "no free cells to pair atoms " + std::to_string(lo) +
                              " and " + std::to_string(hi));
    }
    pos[lo] = *best_left;
    pos[hi] = Cell{best_left->col + 1, best_left->row};
    occ[grid.flat(pos[lo])] = static_cast<int>(lo);
    occ[grid.flat(pos[hi])] = static_cast<int>(hi);
  }
  return Layout(grid, std::move(pos));
}

MoveCost gate_cost(const Layout& layout, const Chunk& chunk,
                   const CostParams& params) {
  if (chunk.empty()) return {};
  const Layout paired = pair_adjacent_state(layout, chunk);
  MoveCost out = layout_cost(layout, paired, params);
  out.duration += params.t_gate;
  out.cost = fidelity_cost(out.duration, out.touches, params);
  return out;
}

double step_reward(const Layout& current, const Layout& next,
                   const Chunk& chunk, const Layout& initial,
                   const CostParams& params) {
  return -layout_cost(current, next, params).cost -
         gate_cost(next, chunk, params).cost +
         gate_cost(initial, chunk, params).cost;
}

}  // namespace atomgame
