#pragma once

#include <string>
#include <vector>

#include "atomgame/circuit.hpp"
#include "atomgame/env.hpp"
#include "atomgame/geometry.hpp"
#include "oracles.hpp"

namespace testing_support {

inline std::string source_path(const std::string& rel) {
  return std::string(ATOMGAME_SOURCE_DIR) + "/" + rel;
}

inline std::vector<oracle::P> points(const atomgame::Layout& layout) {
  std::vector<oracle::P> out;
  for (const atomgame::Cell c : layout.positions()) out.push_back({c.col, c.row});
  return out;
}

inline oracle::Params oracle_params(const atomgame::CostParams& p,
                                    double spacing = 1.0) {
  return {p.alpha, p.beta, p.epsilon, p.gamma_accel, p.t_gate, spacing};
}

inline atomgame::Layout make_layout(atomgame::Grid grid,
                                    std::vector<atomgame::Cell> cells) {
  return atomgame::Layout(grid, std::move(cells));
}

// The small instance used for oracle equivalence: 3 atoms in row-major order on
// a 2x3 grid, two chunks that both pair atoms 0 and 2.
inline atomgame::AtomGameEnv tiny_env() {
  atomgame::ChunkedCircuit c{3, {{{0, 2}}, {{0, 2}}}};
  atomgame::EnvConfig config;
  config.layout_mode = atomgame::LayoutMode::kRowMajor;
  return atomgame::AtomGameEnv(c, atomgame::Grid{2, 3, 1.0}, {}, config);
}

inline const std::vector<std::string>& bundled_circuits() {
  static const std::vector<std::string> names = {
      "circuits/ladder_ansatz_14.qasm", "circuits/qaoa_ring_14.qasm",
      "circuits/random_trotter_30.json", "circuits/random_trotter_small_s7.json"};
  return names;
}

// Sum over the episode of G(s0,C_t) - G(s_{t+1},C_t) - L(s_t,s_{t+1}), with
// all costs from the oracle. The intermediate paired layouts come from
// `paired(layout, t)`.
template <typename PairedFn>
double oracle_episode_reward(const atomgame::AtomGameEnv& env,
                             const std::vector<atomgame::Transition>& trs,
                             PairedFn&& paired) {
  const oracle::Params p = oracle_params(env.params(), env.grid().spacing);
  const auto s0 = points(env.initial());
  double total = 0.0;
  for (const auto& tr : trs) {
    const bool empty = env.circuit().chunks[tr.t].empty();
    const double base = oracle::gate_cost(s0, points(paired(env.initial(), tr.t)), empty, p);
    const double exec = oracle::gate_cost(points(tr.after),
                                          points(paired(tr.after, tr.t)), empty, p);
    const double move = oracle::layout_cost(points(tr.before), points(tr.after), p).j;
    total += base - exec - move;
  }
  return total;
}

}  // namespace testing_support
