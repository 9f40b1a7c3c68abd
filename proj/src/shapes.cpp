#include "gridbench/shapes.hpp"

#include <algorithm>

namespace gridbench {

namespace {

std::vector<std::vector<Coord>> build_library() {
    std::vector<std::vector<Coord>> lib;
    // 1: domino
    lib.push_back({{0, 0}, {0, 1}});
    // 2: 2x2 square
    lib.push_back({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    // 3: 1x3 line
    lib.push_back({{0, 0}, {0, 1}, {0, 2}});
    // 4: L-tromino
    lib.push_back({{0, 0}, {1, 0}, {1, 1}});
    // 5: T-tetromino
    lib.push_back({{0, 0}, {0, 1}, {0, 2}, {1, 1}});
    // 6: S-tetromino
    lib.push_back({{0, 1}, {0, 2}, {1, 0}, {1, 1}});
    // 7: plus pentomino
    lib.push_back({{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}});
    // 8: U-pentomino
    lib.push_back({{0, 0}, {0, 2}, {1, 0}, {1, 1}, {1, 2}});
    // 9: H-heptomino
    lib.push_back({{0, 0}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 2}});
    // 10: 3x3 ring
    lib.push_back({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
    for (auto& s : lib) std::sort(s.begin(), s.end());
    return lib;
}

const std::vector<std::vector<Coord>>& library() {
    static const auto lib = build_library();
    return lib;
}

}  // namespace

const std::vector<Coord>& library_shape(int index) {
    if (index < 1 || index > kShapeCount) {
        throw VariableOutOfRange("shape index " + std::to_string(index) +
                                 " outside [1," + std::to_string(kShapeCount) + "]");
    }
    return library()[static_cast<std::size_t>(index - 1)];
}

std::vector<Coord> normalize_cells(const std::vector<Coord>& cells) {
    if (cells.empty()) return {};
    int min_r = cells[0].row, min_c = cells[0].col;
    for (const Coord& p : cells) {
        min_r = std::min(min_r, p.row);
        min_c = std::min(min_c, p.col);
    }
    std::vector<Coord> out;
    out.reserve(cells.size());
    for (const Coord& p : cells) out.push_back({p.row - min_r, p.col - min_c});
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> identify_shape(const std::vector<Coord>& cells) {
    const auto norm = normalize_cells(cells);
    for (int i = 0; i < kShapeCount; ++i) {
        if (library()[static_cast<std::size_t>(i)] == norm) return i + 1;
    }
    return std::nullopt;
}

}  // namespace gridbench
