#pragma once

#include <cstddef>

#include "atomgame/circuit.hpp"
#include "atomgame/geometry.hpp"
#include "json.hpp"

namespace atomgame {

/// Constants of the fidelity proxy J(D, M) = alpha * D * N + beta * M.
struct CostParams {
  double alpha = 0.02;       // inverse coherence time per unit duration
  double beta = 0.002;       // loss per pick-up/drop-off
  double epsilon = 0.5;      // fraction of active atoms touched per move
  double gamma_accel = 1.0;  // acceleration constant of a constant-a move
  double t_gate = 10.0;      // storage -> gate region -> storage transfer time
  std::size_t n_atoms = 0;   // N

  void validate() const;

  friend bool operator==(const CostParams&, const CostParams&) = default;
};

nlohmann::json to_json(const CostParams& params);
/// Missing fields keep their defaults.
CostParams params_from_json(const nlohmann::json& j,
                            const CostParams& defaults = {});

struct MoveCost {
  double duration = 0.0;  // D
  double touches = 0.0;   // M
  double cost = 0.0;      // J(D, M)
};

double fidelity_cost(double duration, double touches, const CostParams& params);

/// Storage-region reconfiguration cost L(before, after).
MoveCost layout_cost(const Layout& before, const Layout& after,
                     const CostParams& params);

/// Intermediate layout in which every gate pair of `chunk` sits on 4-adjacent
/// cells. Pairs are handled by ascending smaller qubit:
///   1. already adjacent: untouched;
///   2. else the higher-id atom goes to the free 4-neighbor of the lower-id
///      atom nearest to it (ties row-major);
///   3. else the lower-id atom goes next to the higher-id one likewise;
///   4. else both go to the free horizontal cell pair whose midpoint is
///      nearest to the pair's midpoint (ties row-major).
/// Atoms outside the chunk never move. Throws AtomGameError(kCongestion).
Layout pair_adjacent_state(const Layout& layout, const Chunk& chunk);

/// Gate execution cost G(layout, chunk); zero for an empty chunk.
MoveCost gate_cost(const Layout& layout, const Chunk& chunk,
                   const CostParams& params);

/// r = -L(current, next) - G(next, chunk) + G(initial, chunk).
double step_reward(const Layout& current, const Layout& next,
                   const Chunk& chunk, const Layout& initial,
                   const CostParams& params);

}  // namespace atomgame
