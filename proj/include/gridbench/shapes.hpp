#pragma once

#include <optional>
#include <vector>

#include "gridbench/grid.hpp"

namespace gridbench {

// Library of 10 canonical 4-connected shapes, indexed 1-10, in roughly
// increasing structural complexity. Cell sets are translation-normalized
// to min_row = min_col = 0 and sorted.
inline constexpr int kShapeCount = 10;

const std::vector<Coord>& library_shape(int index);

// Reverse lookup by translation-normalized cell set (no rotation or
// reflection matching). Empty when the shape is not in the library.
std::optional<int> identify_shape(const std::vector<Coord>& cells);

std::vector<Coord> normalize_cells(const std::vector<Coord>& cells);

}  // namespace gridbench
