#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <vector>

#include "atomgame/circuit.hpp"
#include "atomgame/cost_model.hpp"
#include "atomgame/geometry.hpp"
#include "json.hpp"

namespace atomgame {

struct EnvConfig {
  std::size_t window = 2;       // W: chunks whose atoms are playable
  std::size_t horizon_cap = 8;  // upcoming chunks shipped per observation
  std::uint64_t seed = 0;
  LayoutMode layout_mode = LayoutMode::kRandom;
};

/// Target cell per playable atom; atoms not keyed stay put.
struct ChunkAction {
  std::map<Qubit, Cell> targets;

  bool empty() const { return targets.empty(); }
  friend bool operator==(const ChunkAction&, const ChunkAction&) = default;
};

struct Transition {
  std::size_t t = 0;
  Layout before;
  ChunkAction action;
  double reward = 0.0;
  Layout after;
  bool done = false;
};

struct Observation {
  std::size_t t = 0;
  std::size_t depth = 0;  // T
  Grid grid;
  std::vector<std::size_t> positions;          // flat cell per atom, s_t
  std::vector<std::size_t> initial_positions;  // s_0
  std::vector<Qubit> playable;
  std::vector<Chunk> upcoming;
  bool done = false;
};

/// The Atom Game MDP. One instance is one episode; copies are independent
/// snapshots (planners use them for lookahead).
class AtomGameEnv {
 public:
  /// Resets to t = 0 with s_0 drawn by `initial_layout`. `params.n_atoms` is
  /// overwritten with the circuit's register size.
  AtomGameEnv(ChunkedCircuit circuit, Grid grid, CostParams params,
              EnvConfig config);

  /// Restarts the episode from the same s_0.
  void reset();

  Observation observation() const;

  /// Applies one action. On any error the environment is left untouched.
  /// Throws AtomGameError (kEpisodeDone, kNotPlayable, kOutOfBounds,
  /// kCollision, kCongestion).
  Transition step(const ChunkAction& action);

  /// Layout an action would produce, after validation.
  Layout preview(const ChunkAction& action) const;
  /// Reward of an action at the current step without advancing.
  double preview_reward(const ChunkAction& action) const;
  /// Reward of moving to `next` while serving chunk `t` (t >= current t).
  double reward_for(const Layout& from, const Layout& next, std::size_t t) const;

  std::size_t t() const { return t_; }
  std::size_t depth() const { return circuit_.depth(); }
  bool done() const { return t_ == circuit_.depth(); }
  const Layout& current() const { return current_; }
  const Layout& initial() const { return initial_; }
  const ChunkedCircuit& circuit() const { return circuit_; }
  const CostParams& params() const { return params_; }
  const EnvConfig& config() const { return config_; }
  const Grid& grid() const { return initial_.grid(); }
  const std::vector<Qubit>& playable() const { return playable_; }
  bool is_playable(Qubit q) const;

  /// Cached G(s_0, C_t).
  double baseline_cost(std::size_t t) const { return baseline_[t]; }
  double baseline_total() const;
  double total_reward() const { return total_reward_; }

 private:
  void validate_action(const ChunkAction& action) const;
  void refresh_playable();

  ChunkedCircuit circuit_;
  CostParams params_;
  EnvConfig config_;
  Layout initial_;
  Layout current_;
  std::size_t t_ = 0;
  std::vector<double> baseline_;
  std::vector<Qubit> playable_;
  double total_reward_ = 0.0;
};

using Policy = std::function<ChunkAction(const AtomGameEnv&)>;

struct EpisodeResult {
  std::vector<Transition> transitions;
  double total_reward = 0.0;
  double baseline_cost = 0.0;
  double reduction_pct = 0.0;
};

/// Plays the episode to the end. Reduction is 100 * sum(r) / sum(G(s_0, C_t)),
/// or 0 when the baseline is zero.
EpisodeResult run_episode(AtomGameEnv& env, const Policy& policy);

/// Number of (step, atom) action entries that put the atom on a new cell.
std::size_t count_layout_changes(const std::vector<Transition>& transitions);

nlohmann::json to_json(const Observation& obs);
nlohmann::json to_json(const Transition& tr);
void write_trace(std::ostream& out, const std::vector<Transition>& transitions);

/// Flat-index action encoding shared with the wire protocol:
/// [{"atom":q,"cell":j}, ...].
nlohmann::json action_to_json(const ChunkAction& action, const Grid& grid);
ChunkAction action_from_json(const nlohmann::json& targets, const Grid& grid);

}  // namespace atomgame
