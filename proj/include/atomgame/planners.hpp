#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "atomgame/env.hpp"

namespace atomgame {

/// Never reconfigures; the no-reconfiguration baseline.
Policy identity_policy();

/// Each playable atom, with probability `p_move`, jumps to a uniformly random
/// free cell. Occupancy is updated after every jump.
Policy random_policy(double p_move, std::uint64_t seed);

/// Per-step greedy: atoms in ascending id order each try staying and their
/// `candidate_cap` nearest free cells; the best single-atom change is kept
/// only if it strictly beats staying.
Policy greedy_policy(std::size_t candidate_cap);

struct AnnealConfig {
  std::size_t iterations = 200;     // temperature levels
  std::size_t proposals = 8;        // proposals per level
  double initial_temperature = 0.05;
  double cooling = 0.97;
  std::size_t lookahead = 2;        // H, chunks scored per decision
  std::uint64_t seed = 0;

  void validate() const;
};

/// Simulated annealing over the current step's ChunkAction. A candidate is
/// scored by its own reward plus the rewards of the next H-1 chunks under
/// identity continuation. The best candidate seen is returned.
Policy anneal_policy(const AnnealConfig& config);

/// Lookahead score used by the annealer: reward at the current step plus the
/// identity-continuation rewards of the following `lookahead - 1` chunks.
/// -inf when some chunk in the window cannot be paired (congestion).
double lookahead_score(const AtomGameEnv& env, const ChunkAction& action,
                       std::size_t lookahead);

struct BruteForceResult {
  std::vector<ChunkAction> actions;
  double total_reward = 0.0;
  std::size_t sequences = 0;  // size of the enumerated search space
};

/// Exhaustive search over all per-step actions (playable atoms onto any free
/// cell). Throws AtomGameError(kInvalidArgument) when the search space
/// exceeds `bound` sequences.
BruteForceResult brute_force_optimum(const AtomGameEnv& env, std::size_t bound);

/// Upper bound on sequences brute_force_optimum would enumerate, or nullopt on
/// overflow.
std::optional<std::size_t> brute_force_space(const AtomGameEnv& env);

}  // namespace atomgame
