#include "atomgame/env.hpp"

#include <algorithm>
#include <numeric>

#include "atomgame/errors.hpp"

namespace atomgame {

AtomGameEnv::AtomGameEnv(ChunkedCircuit circuit, Grid grid, CostParams params,
                         EnvConfig config)
    : circuit_(std::move(circuit)), params_(params), config_(config) {
  circuit_.validate();
  params_.validate();
  if (config_.window < 1) {
    throw AtomGameError(ErrorCode::kInvalidArgument, "window must be >= 1");
  }
  params_.n_atoms = circuit_.n_qubits;
  initial_ = initial_layout(grid, circuit_.n_qubits, config_.layout_mode,
                            config_.seed);
  baseline_.reserve(circuit_.depth());
  for (const Chunk& chunk : circuit_.chunks) {
    baseline_.push_back(gate_cost(initial_, chunk, params_).cost);
  }
  reset();
}

void AtomGameEnv::reset() {
  current_ = initial_;
  t_ = 0;
  total_reward_ = 0.0;
  refresh_playable();
}

void AtomGameEnv::refresh_playable() {
  playable_ = done() ? std::vector<Qubit>{}
                     : playable_atoms(circuit_, t_, config_.window);
}

bool AtomGameEnv::is_playable(Qubit q) const {
  return std::binary_search(playable_.begin(), playable_.end(), q);
}

double AtomGameEnv::baseline_total() const {
  return std::accumulate(baseline_.begin(), baseline_.end(), 0.0);
}

Observation AtomGameEnv::observation() const {
  Observation obs;
  obs.t = t_;
  obs.depth = depth();
  obs.grid = grid();
  obs.positions = current_.flat_positions();
  obs.initial_positions = initial_.flat_positions();
  obs.playable = playable_;
  obs.done = done();
  const std::size_t end = std::min(depth(), t_ + config_.horizon_cap);
  for (std::size_t k = t_; k < end; ++k) obs.upcoming.push_back(circuit_.chunks[k]);
  return obs;
}

void AtomGameEnv::validate_action(const ChunkAction& action) const {
  if (done()) {
    throw AtomGameError(ErrorCode::kEpisodeDone, "episode already finished");
  }
  for (const auto& [q, cell] : action.targets) {
    if (!is_playable(q)) {
      throw AtomGameError(ErrorCode::kNotPlayable,
                          "atom " + std::to_string(q) +
                              " is not playable at step " + std::to_string(t_));
    }
    if (!grid().contains(cell)) {
      throw AtomGameError(ErrorCode::kOutOfBounds,
                          "target of atom " + std::to_string(q) +
                              " is outside the grid");
    }
  }
}

Layout AtomGameEnv::preview(const ChunkAction& action) const {
  validate_action(action);
  return apply_moves(current_, action.targets);
}

double AtomGameEnv::reward_for(const Layout& from, const Layout& next,
                               std::size_t t) const {
  const Chunk& chunk = circuit_.chunks.at(t);
  return -layout_cost(from, next, params_).cost -
         gate_cost(next, chunk, params_).cost + baseline_[t];
}

double AtomGameEnv::preview_reward(const ChunkAction& action) const {
  return reward_for(current_, preview(action), t_);
}

Transition AtomGameEnv::step(const ChunkAction& action) {
  Layout next = preview(action);
  const double reward = reward_for(current_, next, t_);

  Transition tr;
  tr.t = t_;
  tr.before = current_;
  tr.action = action;
  tr.reward = reward;
  tr.after = next;

  current_ = std::move(next);
  total_reward_ += reward;
  ++t_;
  refresh_playable();
  tr.done = done();
  return tr;
}

EpisodeResult run_episode(AtomGameEnv& env, const Policy& policy) {
  EpisodeResult result;
  while (!env.done()) {
    result.transitions.push_back(env.step(policy(env)));
    result.total_reward += result.transitions.back().reward;
  }
  result.baseline_cost = env.baseline_total();
  result.reduction_pct = result.baseline_cost > 0.0
                             ? 100.0 * result.total_reward / result.baseline_cost
                             : 0.0;
  return result;
}

std::size_t count_layout_changes(const std::vector<Transition>& transitions) {
  std::size_t n = 0;
  for (const Transition& tr : transitions) {
    for (const auto& [q, cell] : tr.action.targets) {
      if (tr.before.at(q) != cell) ++n;
    }
  }
  return n;
}

nlohmann::json to_json(const Observation& obs) {
  nlohmann::json chunks = nlohmann::json::array();
  for (const Chunk& c : obs.upcoming) {
    nlohmann::json chunk = nlohmann::json::array();
    for (const GatePair& g : c) chunk.push_back({g.q1, g.q2});
    chunks.push_back(std::move(chunk));
  }
  return {{"t", obs.t},
          {"T", obs.depth},
          {"grid", {{"rows", obs.grid.rows}, {"cols", obs.grid.cols}}},
          {"positions", obs.positions},
          {"initial_positions", obs.initial_positions},
          {"playable", obs.playable},
          {"chunks", std::move(chunks)},
          {"done", obs.done}};
}

nlohmann::json action_to_json(const ChunkAction& action, const Grid& grid) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [q, cell] : action.targets) {
    out.push_back({{"atom", q}, {"cell", grid.flat(cell)}});
  }
  return out;
}

ChunkAction action_from_json(const nlohmann::json& targets, const Grid& grid) {
  if (!targets.is_array()) {
    throw AtomGameError(ErrorCode::kInvalidArgument, "targets must be an array");
  }
  ChunkAction action;
  for (const auto& entry : targets) {
    if (!entry.is_object() || !entry.contains("atom") || !entry.contains("cell") ||
        !entry["atom"].is_number_integer() || !entry["cell"].is_number_integer()) {
      throw AtomGameError(ErrorCode::kInvalidArgument,
                          "target entries need integer 'atom' and 'cell'");
    }
    const auto atom = entry["atom"].get<std::int64_t>();
    const auto cell = entry["cell"].get<std::int64_t>();
    if (atom < 0) {
      throw AtomGameError(ErrorCode::kNotPlayable, "negative atom id");
    }
    if (cell < 0 || static_cast<std::size_t>(cell) >= grid.size()) {
      throw AtomGameError(ErrorCode::kOutOfBounds,
                          "cell " + std::to_string(cell) + " outside grid");
    }
    const auto [it, fresh] = action.targets.emplace(
        static_cast<Qubit>(atom), grid.cell(static_cast<std::size_t>(cell)));
    if (!fresh) {
      throw AtomGameError(ErrorCode::kInvalidArgument,
                          "atom " + std::to_string(atom) + " targeted twice");
    }
  }
  return action;
}

nlohmann::json to_json(const Transition& tr) {
  const Grid& grid = tr.before.grid();
  return {{"t", tr.t},
          {"s_t", tr.before.flat_positions()},
          {"action", action_to_json(tr.action, grid)},
          {"reward", tr.reward},
          {"s_next", tr.after.flat_positions()},
          {"done", tr.done}};
}

void write_trace(std::ostream& out, const std::vector<Transition>& transitions) {
  for (const Transition& tr : transitions) out << to_json(tr).dump() << '\n';
}

}  // namespace atomgame
