#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridbench/errors.hpp"

namespace gridbench {

// Cell values are 0-9; 0 is background, 1-9 are object colors.
using CellValue = std::uint8_t;

inline constexpr int kMinDim = 1;
// Canvas cap. The move family needs one column/row beyond the 30-cell
// variable ceiling (a 1-wide object moved 30 cells spans 31 columns).
inline constexpr int kMaxDim = 31;
inline constexpr CellValue kBackground = 0;
inline constexpr CellValue kMaxColor = 9;

struct Coord {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const Coord&, const Coord&) = default;
};

// Rectangular raster of small integer cells, row-major. Operations never
// mutate in place; they return new grids.
class Grid {
public:
    Grid() : Grid(1, 1) {}
    Grid(int rows, int cols, CellValue fill = kBackground);
    Grid(std::initializer_list<std::initializer_list<int>> rows);
    static Grid from_rows(const std::vector<std::vector<int>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    CellValue at(int r, int c) const { return cells_[idx(r, c)]; }
    void set(int r, int c, CellValue v);
    bool in_bounds(int r, int c) const {
        return r >= 0 && r < rows_ && c >= 0 && c < cols_;
    }

    const std::vector<CellValue>& cells() const { return cells_; }
    std::vector<std::vector<int>> to_rows() const;

    // Compact single-line form, e.g. "[[1,0],[0,2]]".
    std::string to_string() const;

    friend bool operator==(const Grid& a, const Grid& b) = default;

private:
    std::size_t idx(int r, int c) const;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<CellValue> cells_;
};

struct BoundingBox {
    int min_row = 0;
    int min_col = 0;
    int max_row = 0;
    int max_col = 0;
    int height() const { return max_row - min_row + 1; }
    int width() const { return max_col - min_col + 1; }
    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// One connected component of nonzero cells. `color` is the value at the
// lexicographically smallest cell (components are single-colored unless
// extraction ran with same_color_only = false).
struct GridObject {
    CellValue color = 0;
    std::vector<Coord> cells;  // sorted (row, col)
    BoundingBox bounding_box;
    int size() const { return static_cast<int>(cells.size()); }
};

enum class Connectivity { four_neighbor, eight_neighbor };

enum class MirrorAxis { horizontal, vertical, main_diagonal };

enum class PivotKind { grid_center, coordinate };

// Components ordered by (min_row, min_col) of their bounding boxes.
// With same_color_only, cells join a component only through equal values;
// otherwise any nonzero neighbors connect.
std::vector<GridObject> connected_components(const Grid& grid,
                                             Connectivity connectivity,
                                             bool same_color_only = true);

// Erases the object at its source cells and repaints it shifted by
// (dr, dc). Throws OutOfBounds if any destination cell leaves the canvas.
Grid translate(const GridObject& object, int dr, int dc, const Grid& canvas);

// Clockwise quarter-turn rotation. grid_center rotates the whole raster
// (dimensions swap for odd turn counts); a coordinate pivot rotates cell
// contents about (pivot_r, pivot_c) on a same-sized canvas.
Grid rotate(const Grid& grid, int quarter_turns, PivotKind pivot,
            int pivot_r = 0, int pivot_c = 0);

Grid mirror(const Grid& grid, MirrorAxis axis);

bool equals_exact(const Grid& a, const Grid& b);

}  // namespace gridbench
