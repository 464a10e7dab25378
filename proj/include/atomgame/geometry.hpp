#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace atomgame {

using Qubit = std::uint32_t;

/// A trap in the storage grid, addressed as (column, row).
struct Cell {
  int col = 0;
  int row = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Storage-region trap grid. `spacing` is the lattice constant used when
/// converting cell offsets into physical distances.
struct Grid {
  int rows = 0;
  int cols = 0;
  double spacing = 1.0;

  std::size_t size() const { return static_cast<std::size_t>(rows) * cols; }
  bool contains(Cell c) const {
    return c.col >= 0 && c.row >= 0 && c.col < cols && c.row < rows;
  }
  /// Row-major flat index: j = row * cols + col.
  std::size_t flat(Cell c) const {
    return static_cast<std::size_t>(c.row) * cols + c.col;
  }
  Cell cell(std::size_t j) const {
    return Cell{static_cast<int>(j % cols), static_cast<int>(j / cols)};
  }

  void validate() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Default storage grids by register size (14 -> 4x10, 30 -> 7x10,
/// 50 -> 5x20, 100 -> 10x20). Returns nullopt above 100 qubits.
std::optional<Grid> default_grid_for(std::size_t n_qubits);

/// Parses "RxC" (e.g. "7x10").
Grid parse_grid(const std::string& text);

enum class LayoutMode { kRandom, kRowMajor };

LayoutMode parse_layout_mode(const std::string& text);
std::string to_string(LayoutMode mode);

/// Placement of N atoms on distinct cells of a grid: the device state.
class Layout {
 public:
  Layout() = default;
  /// Throws AtomGameError on out-of-bounds or duplicate cells.
  Layout(Grid grid, std::vector<Cell> positions);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return positions_.size(); }
  Cell at(Qubit q) const { return positions_.at(q); }
  std::span<const Cell> positions() const { return positions_; }

  /// Occupant of each flat cell, or -1 when free.
  std::vector<int> occupancy() const;
  std::vector<std::size_t> flat_positions() const;

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  Grid grid_;
  std::vector<Cell> positions_;
};

Layout initial_layout(const Grid& grid, std::size_t n_atoms, LayoutMode mode,
                      std::uint64_t seed);

/// Moves keyed atoms to their targets. Non-keyed atoms stay. Throws
/// AtomGameError(kCollision) naming the contested cell, or kOutOfBounds.
Layout apply_moves(const Layout& layout, const std::map<Qubit, Cell>& targets);

/// Euclidean distance between two cells, in lattice units times spacing.
double distance(const Grid& grid, Cell a, Cell b);

nlohmann::json to_json(const Layout& layout);
Layout layout_from_json(const nlohmann::json& j);

}  // namespace atomgame
