#include "atomgame/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <regex>

#include "atomgame/errors.hpp"

namespace atomgame {

namespace {

std::string cell_str(Cell c) {
  return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCollision:
      return "collision";
    case ErrorCode::kOutOfBounds:
      return "out_of_bounds";
    case ErrorCode::kNotPlayable:
      return "not_playable";
    case ErrorCode::kEpisodeDone:
      return "episode_done";
    case ErrorCode::kCapacity:
      return "capacity";
    case ErrorCode::kCongestion:
      return "congestion";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
  }
  return "unknown";
}

void Grid::validate() const {
  if (rows <= 0 || cols <= 0) {
    throw AtomGameError(ErrorCode::kInvalidArgument,
                        "grid dimensions must be positive");
  }
  if (!(spacing > 0.0)) {
    throw AtomGameError(ErrorCode::kInvalidArgument,
                        "grid spacing must be positive");
  }
}

std::optional<Grid> default_grid_for(std::size_t n_qubits) {
  if (n_qubits <= 14) return Grid{4, 10, 1.0};
  if (n_qubits <= 30) return Grid{7, 10, 1.0};
  if (n_qubits <= 50) return Grid{5, 20, 1.0};
  if (n_qubits <= 100) return Grid{10, 20, 1.0};
  return std::nullopt;
}

Grid parse_grid(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw AtomGameError(ErrorCode::kInvalidArgument,
                        "grid must look like RxC, got '" + text + "'");
  }
  Grid g{std::stoi(m[1]), std::stoi(m[2]), 1.0};
  g.validate();
  return g;
}

LayoutMode parse_layout_mode(const std::string& text) {
  if (text == "random") return LayoutMode::kRandom;
  if (text == "rowmajor") return LayoutMode::kRowMajor;
  throw AtomGameError(ErrorCode::kInvalidArgument,
                      "unknown layout mode '" + text + "'");
}

std::string to_string(LayoutMode mode) {
  return mode == LayoutMode::kRandom ? "random" : "rowmajor";
}

Layout::Layout(Grid grid, std::vector<Cell> positions)
    : grid_(grid), positions_(std::move(positions)) {
  grid_.validate();
  std::vector<char> seen(grid_.size(), 0);
  for (const Cell c : positions_) {
    if (!grid_.contains(c)) {
      throw AtomGameError(ErrorCode::kOutOfBounds,
                          "cell " + cell_str(c) + " outside grid");
    }
    auto& s = seen[grid_.flat(c)];
    if (s) {
      throw AtomGameError(ErrorCode::kCollision,
                          "two atoms on cell " + cell_str(c));
    }
    s = 1;
  }
}

std::vector<int> Layout::occupancy() const {
  std::vector<int> occ(grid_.size(), -1);
  for (std::size_t q = 0; q < positions_.size(); ++q) {
    occ[grid_.flat(positions_[q])] = static_cast<int>(q);
  }
  return occ;
}

std::vector<std::size_t> Layout::flat_positions() const {
  std::vector<std::size_t> out;
  out.reserve(positions_.size());
  for (const Cell c : positions_) out.push_back(grid_.flat(c));
  return out;
}

Layout initial_layout(const Grid& grid, std::size_t n_atoms, LayoutMode mode,
                      std::uint64_t seed) {
  grid.validate();
  if (n_atoms > grid.size()) {
    throw AtomGameError(ErrorCode::kCapacity,
                        std::to_string(n_atoms) + " atoms do not fit on a " +
                            std::to_string(grid.rows) + "x" +
                            std::to_string(grid.cols) + " grid");
  }
  std::vector<std::size_t> cells(grid.size());
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  if (mode == LayoutMode::kRandom) {
    std::mt19937_64 rng(seed);
    std::shuffle(cells.begin(), cells.end(), rng);
  }
  std::vector<Cell> positions;
  positions.reserve(n_atoms);
  for (std::size_t q = 0; q < n_atoms; ++q) {
    positions.push_back(grid.cell(cells[q]));
  }
  return Layout(grid, std::move(positions));
}

Layout apply_moves(const Layout& layout, const std::map<Qubit, Cell>& targets) {
  const Grid& grid = layout.grid();
  std::vector<int> occ = layout.occupancy();
  for (const auto& [q, c] : targets) {
    if (q >= layout.size()) {
      throw AtomGameError(ErrorCode::kInvalidArgument,
                          "atom " + std::to_string(q) + " does not exist");
    }
    if (!grid.contains(c)) {
      throw AtomGameError(ErrorCode::kOutOfBounds,
                          "target " + cell_str(c) + " outside grid");
    }
    occ[grid.flat(layout.at(q))] = -1;
  }
  std::vector<Cell> positions(layout.positions().begin(),
                              layout.positions().end());
  for (const auto& [q, c] : targets) {
    auto& slot = occ[grid.flat(c)];
    if (slot != -1) {
      throw AtomGameError(ErrorCode::kCollision,
                          "collision at cell " + cell_str(c) + " between atom " +
                              std::to_string(slot) + " and atom " +
                              std::to_string(q));
    }
    slot = static_cast<int>(q);
    positions[q] = c;
  }
  return Layout(grid, std::move(positions));
}

double distance(const Grid& grid, Cell a, Cell b) {
  const double dc = a.col - b.col;
  const double dr = a.row - b.row;
  return std::hypot(dc, dr) * grid.spacing;
}

nlohmann::json to_json(const Layout& layout) {
  nlohmann::json positions = nlohmann::json::array();
  for (const Cell c : layout.positions()) positions.push_back({c.col, c.row});
  return {{"rows", layout.grid().rows},
          {"cols", layout.grid().cols},
          {"spacing", layout.grid().spacing},
          {"positions", std::move(positions)}};
}

Layout layout_from_json(const nlohmann::json& j) {
  Grid grid{j.at("rows").get<int>(), j.at("cols").get<int>(),
            j.value("spacing", 1.0)};
  std::vector<Cell> positions;
  for (const auto& p : j.at("positions")) {
    positions.push_back(Cell{p.at(0).get<int>(), p.at(1).get<int>()});
  }
  return Layout(grid, std::move(positions));
}

}  // namespace atomgame
