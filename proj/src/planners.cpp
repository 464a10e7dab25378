#include "atomgame/planners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>

#include "atomgame/errors.hpp"

namespace atomgame {

Policy identity_policy() {
  return [](const AtomGameEnv&) { return ChunkAction{}; };
}

Policy random_policy(double p_move, std::uint64_t seed) {
  if (!(p_move >= 0.0 && p_move <= 1.0)) {
    throw AtomGameError(ErrorCode::kInvalidArgument, "p_move must be in [0,1]");
  }
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [p_move, rng](const AtomGameEnv& env) {
    ChunkAction action;
    const Grid& grid = env.grid();
    std::vector<int> occ = env.current().occupancy();
    std::bernoulli_distribution coin(p_move);
    for (const Qubit q : env.playable()) {
      if (!coin(*rng)) continue;
      std::vector<std::size_t> free_cells;
      for (std::size_t j = 0; j < occ.size(); ++j) {
        if (occ[j] == -1) free_cells.push_back(j);
      }
      if (free_cells.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, free_cells.size() - 1);
      const std::size_t j = free_cells[pick(*rng)];
      occ[grid.flat(env.current().at(q))] = -1;
      occ[j] = static_cast<int>(q);
      action.targets[q] = grid.cell(j);
    }
    return action;
  };
}

Policy greedy_policy(std::size_t candidate_cap) {
  return [candidate_cap](const AtomGameEnv& env) {
    ChunkAction action;
    if (candidate_cap == 0) return action;
    const Grid& grid = env.grid();
    double best = -std::numeric_limits<double>::infinity();
    try {
      best = env.preview_reward(action);
    } catch (const AtomGameError& e) {
      if (e.code() != ErrorCode::kCongestion) throw;
    }
    for (const Qubit q : env.playable()) {
      const Layout partial = apply_moves(env.current(), action.targets);
      const Cell here = partial.at(q);
      const std::vector<int> occ = partial.occupancy();

      std::vector<std::size_t> free_cells;
      for (std::size_t j = 0; j < occ.size(); ++j) {
        if (occ[j] == -1) free_cells.push_back(j);
      }
      // Nearest first; stable sort keeps row-major order on ties.
      std::stable_sort(free_cells.begin(), free_cells.end(),
                       [&](std::size_t a, std::size_t b) {
                         return distance(grid, grid.cell(a), here) <
                                distance(grid, grid.cell(b), here);
                       });
      if (free_cells.size() > candidate_cap) free_cells.resize(candidate_cap);

      std::optional<Cell> choice;
      for (const std::size_t j : free_cells) {
        ChunkAction trial = action;
        trial.targets[q] = grid.cell(j);
        double r;
        try {
          r = env.preview_reward(trial);
        } catch (const AtomGameError& e) {
          if (e.code() == ErrorCode::kCongestion) continue;
          throw;
        }
        if (r > best) {
          best = r;
          choice = grid.cell(j);
        }
      }
      if (choice) action.targets[q] = *choice;
    }
    return action;
  };
}

void AnnealConfig::validate() const {
  if (!(cooling > 0.0 && cooling < 1.0)) {
    throw AtomGameError(ErrorCode::kInvalidArgument, "cooling must be in (0,1)");
  }
  if (!(initial_temperature > 0.0)) {
    throw AtomGameError(ErrorCode::kInvalidArgument,
                        "initial temperature must be positive");
  }
  if (lookahead < 1) {
    throw AtomGameError(ErrorCode::kInvalidArgument, "lookahead must be >= 1");
  }
}

double lookahead_score(const AtomGameEnv& env, const ChunkAction& action,
                       std::size_t lookahead) {
  const Layout next = env.preview(action);
  try {
    double score = env.reward_for(env.current(), next, env.t());
    const std::size_t end = std::min(env.depth(), env.t() + lookahead);
    for (std::size_t k = env.t() + 1; k < end; ++k) {
      score += env.reward_for(next, next, k);
    }
    return score;
  } catch (const AtomGameError& e) {
    if (e.code() == ErrorCode::kCongestion) return -std::numeric_limits<double>::infinity();
    throw;
  }
}

Policy anneal_policy(const AnnealConfig& config) {
  config.validate();
  auto rng = std::make_shared<std::mt19937_64>(config.seed);
  return [config, rng](const AtomGameEnv& env) {
    ChunkAction best;
    if (config.iterations == 0 || env.playable().empty()) return best;
    const Grid& grid = env.grid();
    const std::vector<Qubit>& playable = env.playable();

    double best_score = lookahead_score(env, best, config.lookahead);
    ChunkAction state = best;
    double state_score = best_score;
    double temperature = config.initial_temperature;

    std::uniform_int_distribution<std::size_t> pick_atom(0, playable.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::size_t it = 0; it < config.iterations; ++it) {
      for (std::size_t p = 0; p < config.proposals; ++p) {
        ChunkAction proposal = state;
        const Qubit q = playable[pick_atom(*rng)];
        const bool moved = proposal.targets.contains(q);
        const std::vector<int> occ =
            apply_moves(env.current(), proposal.targets).occupancy();
        if (moved && unit(*rng) < 0.5) {
          // Unmove only when the home cell has not been taken meanwhile.
          if (occ[grid.flat(env.current().at(q))] != -1) continue;
          proposal.targets.erase(q);
        } else {
          std::vector<std::size_t> free_cells;
          for (std::size_t j = 0; j < occ.size(); ++j) {
            if (occ[j] == -1) free_cells.push_back(j);
          }
          if (free_cells.empty()) continue;
          std::uniform_int_distribution<std::size_t> pick(0, free_cells.size() - 1);
          const Cell target = grid.cell(free_cells[pick(*rng)]);
          if (target == env.current().at(q)) {
            proposal.targets.erase(q);
          } else {
            proposal.targets[q] = target;
          }
        }

        const double score = lookahead_score(env, proposal, config.lookahead);
        if (std::isinf(score)) continue;
        const double delta = score - state_score;
        if (delta >= 0.0 || unit(*rng) < std::exp(delta / temperature)) {
          state = std::move(proposal);
          state_score = score;
          if (state_score > best_score) {
            best_score = state_score;
            best = state;
          }
        }
      }
      temperature *= config.cooling;
    }
    return best;
  };
}

namespace {

std::size_t falling_factorial(std::size_t n, std::size_t k, bool& overflow) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t f = n - i;
    if (f != 0 && out > std::numeric_limits<std::size_t>::max() / f) {
      overflow = true;
      return 0;
    }
    out *= f;
  }
  return out;
}

// All injective placements of the playable atoms onto `cells`, skipping
// keys for atoms that stay.
void enumerate_actions(const std::vector<Qubit>& atoms,
                       const std::vector<std::size_t>& cells, const Layout& from,
                       std::size_t depth, std::vector<char>& used,
                       ChunkAction& partial, std::vector<ChunkAction>& out) {
  if (depth == atoms.size()) {
    out.push_back(partial);
    return;
  }
  const Qubit q = atoms[depth];
  const Grid& grid = from.grid();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (used[k]) continue;
    used[k] = 1;
    const Cell c = grid.cell(cells[k]);
    const bool stays = c == from.at(q);
    if (!stays) partial.targets[q] = c;
    enumerate_actions(atoms, cells, from, depth + 1, used, partial, out);
    if (!stays) partial.targets.erase(q);
    used[k] = 0;
  }
}

std::vector<ChunkAction> all_actions(const AtomGameEnv& env) {
  const std::vector<Qubit>& atoms = env.playable();
  const std::vector<int> occ = env.current().occupancy();
  std::vector<std::size_t> cells;
  for (std::size_t j = 0; j < occ.size(); ++j) {
    if (occ[j] == -1 || env.is_playable(static_cast<Qubit>(occ[j]))) {
      cells.push_back(j);
    }
  }
  std::vector<char> used(cells.size(), 0);
  ChunkAction partial;
  std::vector<ChunkAction> out;
  enumerate_actions(atoms, cells, env.current(), 0, used, partial, out);
  return out;
}

struct Best {
  double reward = -std::numeric_limits<double>::infinity();
  std::vector<ChunkAction> actions;
};

Best search(const AtomGameEnv& env) {
  if (env.done()) return Best{0.0, {}};
  Best best;
  for (const ChunkAction& action : all_actions(env)) {
    AtomGameEnv next = env;
    double r;
    try {
      r = next.step(action).reward;
    } catch (const AtomGameError& e) {
      if (e.code() == ErrorCode::kCongestion) continue;
      throw;
    }
    Best tail = search(next);
    if (r + tail.reward > best.reward) {
      best.reward = r + tail.reward;
      best.actions.clear();
      best.actions.push_back(action);
      best.actions.insert(best.actions.end(), tail.actions.begin(),
                          tail.actions.end());
    }
  }
  return best;
}

}  // namespace

std::optional<std::size_t> brute_force_space(const AtomGameEnv& env) {
  const std::size_t n_cells = env.grid().size();
  const std::size_t n_atoms = env.current().size();
  std::size_t total = 1;
  for (std::size_t t = env.t(); t < env.depth(); ++t) {
    const std::size_t playable =
        playable_atoms(env.circuit(), t, env.config().window).size();
    bool overflow = false;
    const std::size_t step =
        falling_factorial(n_cells - n_atoms + playable, playable, overflow);
    if (overflow || (step != 0 && total > std::numeric_limits<std::size_t>::max() / step)) {
      return std::nullopt;
    }
    total *= step;
  }
  return total;
}

BruteForceResult brute_force_optimum(const AtomGameEnv& env, std::size_t bound) {
  const auto space = brute_force_space(env);
  if (!space || *space > bound) {
    throw AtomGameError(ErrorCode::kInvalidArgument,
                        "brute-force search space exceeds bound of " +
                            std::to_string(bound) + " sequences");
  }
  Best best = search(env);
  return BruteForceResult{std::move(best.actions), best.reward, *space};
}

}  // namespace atomgame
