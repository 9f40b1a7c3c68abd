#include "gridbench/grid.hpp"

#include <algorithm>
#include <array>

namespace gridbench {

namespace {

void check_dims(int rows, int cols) {
    if (rows < kMinDim || rows > kMaxDim || cols < kMinDim || cols > kMaxDim) {
        throw InvariantViolation("grid dimensions out of range: " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
    }
}

void check_value(int v) {
    if (v < 0 || v > kMaxColor) {
        throw InvariantViolation("cell value out of range: " + std::to_string(v));
    }
}

}  // namespace

Grid::Grid(int rows, int cols, CellValue fill) : rows_(rows), cols_(cols) {
    check_dims(rows, cols);
    check_value(fill);
    cells_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Grid::Grid(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<int>> v;
    for (const auto& r : rows) v.emplace_back(r);
    *this = from_rows(v);
}

Grid Grid::from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows[0].empty()) {
        throw InvariantViolation("grid must have at least one row and column");
    }
    Grid g(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < g.rows_; ++r) {
        if (static_cast<int>(rows[r].size()) != g.cols_) {
            throw ParseError("ragged row " + std::to_string(r));
        }
        for (int c = 0; c < g.cols_; ++c) {
            check_value(rows[r][c]);
            g.cells_[g.idx(r, c)] = static_cast<CellValue>(rows[r][c]);
        }
    }
    return g;
}

void Grid::set(int r, int c, CellValue v) {
    check_value(v);
    cells_[idx(r, c)] = v;
}

std::size_t Grid::idx(int r, int c) const {
    if (!in_bounds(r, c)) {
        throw OutOfBounds("cell (" + std::to_string(r) + "," + std::to_string(c) +
                          ") outside " + std::to_string(rows_) + "x" +
                          std::to_string(cols_));
    }
    return static_cast<std::size_t>(r) * cols_ + c;
}

std::vector<std::vector<int>> Grid::to_rows() const {
    std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out[r][c] = at(r, c);
    return out;
}

std::string Grid::to_string() const {
    std::string s = "[";
    for (int r = 0; r < rows_; ++r) {
        if (r) s += ',';
        s += '[';
        for (int c = 0; c < cols_; ++c) {
            if (c) s += ',';
            s += std::to_string(int(at(r, c)));
        }
        s += ']';
    }
    s += ']';
    return s;
}

std::vector<GridObject> connected_components(const Grid& grid,
                                             Connectivity connectivity,
                                             bool same_color_only) {
    static constexpr std::array<Coord, 8> kDirs = {
        Coord{-1, 0}, Coord{1, 0}, Coord{0, -1}, Coord{0, 1},
        Coord{-1, -1}, Coord{-1, 1}, Coord{1, -1}, Coord{1, 1}};
    const int ndirs = connectivity == Connectivity::four_neighbor ? 4 : 8;

    std::vector<char> seen(static_cast<std::size_t>(grid.rows()) * grid.cols(), 0);
    auto mark = [&](int r, int c) -> char& {
        return seen[static_cast<std::size_t>(r) * grid.cols() + c];
    };

    std::vector<GridObject> out;
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            if (grid.at(r, c) == kBackground || mark(r, c)) continue;
            GridObject obj;
            obj.color = grid.at(r, c);
            std::vector<Coord> stack{{r, c}};
            mark(r, c) = 1;
            while (!stack.empty()) {
                Coord p = stack.back();
                stack.pop_back();
                obj.cells.push_back(p);
                for (int d = 0; d < ndirs; ++d) {
                    int nr = p.row + kDirs[d].row, nc = p.col + kDirs[d].col;
                    if (!grid.in_bounds(nr, nc) || mark(nr, nc)) continue;
                    CellValue v = grid.at(nr, nc);
                    if (v == kBackground) continue;
                    if (same_color_only && v != grid.at(p.row, p.col)) continue;
                    mark(nr, nc) = 1;
                    stack.push_back({nr, nc});
                }
            }
            std::sort(obj.cells.begin(), obj.cells.end());
            obj.color = grid.at(obj.cells.front().row, obj.cells.front().col);
            obj.bounding_box = {obj.cells.front().row, obj.cells.front().col,
                                obj.cells.front().row, obj.cells.front().col};
            for (const Coord& p : obj.cells) {
                obj.bounding_box.min_row = std::min(obj.bounding_box.min_row, p.row);
                obj.bounding_box.min_col = std::min(obj.bounding_box.min_col, p.col);
                obj.bounding_box.max_row = std::max(obj.bounding_box.max_row, p.row);
                obj.bounding_box.max_col = std::max(obj.bounding_box.max_col, p.col);
            }
            out.push_back(std::move(obj));
        }
    }
    std::sort(out.begin(), out.end(), [](const GridObject& a, const GridObject& b) {
        return std::pair(a.bounding_box.min_row, a.bounding_box.min_col) <
               std::pair(b.bounding_box.min_row, b.bounding_box.min_col);
    });
    return out;
}

Grid translate(const GridObject& object, int dr, int dc, const Grid& canvas) {
    for (const Coord& p : object.cells) {
        if (!canvas.in_bounds(p.row + dr, p.col + dc)) {
            throw OutOfBounds("translated cell (" + std::to_string(p.row + dr) + "," +
                              std::to_string(p.col + dc) + ") leaves the canvas");
        }
    }
    Grid out = canvas;
    for (const Coord& p : object.cells) out.set(p.row, p.col, kBackground);
    for (const Coord& p : object.cells) {
        out.set(p.row + dr, p.col + dc, canvas.at(p.row, p.col));
    }
    return out;
}

Grid rotate(const Grid& grid, int quarter_turns, PivotKind pivot,
            int pivot_r, int pivot_c) {
    int q = ((quarter_turns % 4) + 4) % 4;
    if (q == 0) return grid;

    if (pivot == PivotKind::grid_center) {
        // One clockwise quarter turn of the raster: out(r,c) = in(rows-1-c, r).
        Grid cur = grid;
        for (int t = 0; t < q; ++t) {
            Grid next(cur.cols(), cur.rows());
            for (int r = 0; r < next.rows(); ++r)
                for (int c = 0; c < next.cols(); ++c)
                    next.set(r, c, cur.at(cur.rows() - 1 - c, r));
            cur = next;
        }
        return cur;
    }

    Grid out(grid.rows(), grid.cols());
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            CellValue v = grid.at(r, c);
            if (v == kBackground) continue;
            int rr = r, cc = c;
            for (int t = 0; t < q; ++t) {
                int nr = pivot_r + (cc - pivot_c);
                int nc = pivot_c - (rr - pivot_r);
                rr = nr;
                cc = nc;
            }
            if (!out.in_bounds(rr, cc)) {
                throw OutOfBounds("rotated cell leaves the canvas");
            }
            out.set(rr, cc, v);
        }
    }
    return out;
}

Grid mirror(const Grid& grid, MirrorAxis axis) {
    switch (axis) {
        case MirrorAxis::horizontal: {
            Grid out(grid.rows(), grid.cols());
            for (int r = 0; r < grid.rows(); ++r)
                for (int c = 0; c < grid.cols(); ++c)
                    out.set(r, c, grid.at(grid.rows() - 1 - r, c));
            return out;
        }
        case MirrorAxis::vertical: {
            Grid out(grid.rows(), grid.cols());
            for (int r = 0; r < grid.rows(); ++r)
                for (int c = 0; c < grid.cols(); ++c)
                    out.set(r, c, grid.at(r, grid.cols() - 1 - c));
            return out;
        }
        case MirrorAxis::main_diagonal: {
            if (grid.rows() != grid.cols()) {
                throw ShapeMismatch("diagonal mirror requires a square grid");
            }
            Grid out(grid.rows(), grid.cols());
            for (int r = 0; r < grid.rows(); ++r)
                for (int c = 0; c < grid.cols(); ++c) out.set(r, c, grid.at(c, r));
            return out;
        }
    }
    throw Error("unreachable");
}

bool equals_exact(const Grid& a, const Grid& b) { return a == b; }

}  // namespace gridbench
