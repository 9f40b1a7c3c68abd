#include "gridbench/solver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "gridbench/shapes.hpp"

namespace gridbench {

MoveDirection move_direction_from_variant(const std::string& variant) {
    if (variant == "up") return MoveDirection::up;
    if (variant == "down") return MoveDirection::down;
    if (variant == "left") return MoveDirection::left;
    if (variant == "right") return MoveDirection::right;
    if (variant == "upper_right") return MoveDirection::upper_right;
    throw UnknownFamily("unknown move direction: " + variant);
}

Coord move_step(MoveDirection dir) {
    switch (dir) {
        case MoveDirection::up: return {-1, 0};
        case MoveDirection::down: return {1, 0};
        case MoveDirection::left: return {0, -1};
        case MoveDirection::right: return {0, 1};
        case MoveDirection::upper_right: return {-1, 1};
    }
    throw Error("unreachable");
}

GridObject single_object(const Grid& grid) {
    auto objs = connected_components(grid, Connectivity::four_neighbor, false);
    if (objs.size() != 1) {
        throw ConstraintViolated("expected exactly one object, found " +
                                 std::to_string(objs.size()));
    }
    return objs.front();
}

Grid solve_move(const Grid& input, MoveDirection direction, int distance) {
    const Coord step = move_step(direction);
    return translate(single_object(input), step.row * distance, step.col * distance,
                     input);
}

namespace {

// Rotation pivots work in doubled coordinates so half-integer bounding-box
// centers stay on the lattice.
Coord rotate_cell_doubled(Coord cell, int pivot_r2, int pivot_c2, int quarter_turns) {
    int r2 = 2 * cell.row, c2 = 2 * cell.col;
    for (int t = 0; t < quarter_turns; ++t) {
        int nr2 = pivot_r2 + (c2 - pivot_c2);
        int nc2 = pivot_c2 - (r2 - pivot_r2);
        r2 = nr2;
        c2 = nc2;
    }
    if (r2 % 2 != 0 || c2 % 2 != 0) {
        throw ConstraintViolated("rotation pivot does not map cells onto the lattice");
    }
    return {r2 / 2, c2 / 2};
}

}  // namespace

Grid solve_rotation(const Grid& input, RotationPivot pivot, int quarter_turns) {
    if (quarter_turns < 1 || quarter_turns > 3) {
        throw VariableOutOfRange("quarter_turns must be 1..3");
    }
    const GridObject obj = single_object(input);
    int pr2, pc2;
    if (pivot == RotationPivot::endpoint) {
        pr2 = 2 * obj.cells.front().row;
        pc2 = 2 * obj.cells.front().col;
    } else {
        pr2 = obj.bounding_box.min_row + obj.bounding_box.max_row;
        pc2 = obj.bounding_box.min_col + obj.bounding_box.max_col;
    }
    Grid out = input;
    for (const Coord& p : obj.cells) out.set(p.row, p.col, kBackground);
    for (const Coord& p : obj.cells) {
        Coord q = rotate_cell_doubled(p, pr2, pc2, quarter_turns);
        if (!out.in_bounds(q.row, q.col)) {
            throw OutOfBounds("rotated object leaves the canvas");
        }
        out.set(q.row, q.col, input.at(p.row, p.col));
    }
    return out;
}

Grid solve_symmetry(const Grid& input, MirrorAxis axis) {
    if (axis == MirrorAxis::main_diagonal && input.rows() != input.cols()) {
        throw ShapeMismatch("diagonal symmetry requires a square grid");
    }
    Grid out = input;
    for (int r = 0; r < input.rows(); ++r) {
        for (int c = 0; c < input.cols(); ++c) {
            CellValue v = input.at(r, c);
            if (v == kBackground) continue;
            Coord m;
            switch (axis) {
                case MirrorAxis::horizontal: m = {input.rows() - 1 - r, c}; break;
                case MirrorAxis::vertical: m = {r, input.cols() - 1 - c}; break;
                case MirrorAxis::main_diagonal: m = {c, r}; break;
            }
            CellValue existing = out.at(m.row, m.col);
            if (existing != kBackground && existing != v) {
                throw ConstraintViolated("mirror image collides with another object");
            }
            out.set(m.row, m.col, v);
        }
    }
    return out;
}

namespace {

Grid crop(const Grid& input, const BoundingBox& box) {
    Grid out(box.height(), box.width());
    for (int r = 0; r < box.height(); ++r)
        for (int c = 0; c < box.width(); ++c)
            out.set(r, c, input.at(box.min_row + r, box.min_col + c));
    return out;
}

Grid count_bar(int n, CellValue color) {
    if (n == 0) return Grid(1, 1);
    Grid out(1, n);
    for (int c = 0; c < n; ++c) out.set(0, c, color);
    return out;
}

}  // namespace

Grid solve_size(const Grid& input, const std::string& variant) {
    if (variant == "crop") {
        return crop(input, single_object(input).bounding_box);
    }
    if (variant == "frame") {
        const GridObject obj = single_object(input);
        Grid out = input;
        for (int r = 0; r < out.rows(); ++r) {
            for (int c = 0; c < out.cols(); ++c) {
                if (r == 0 || r == out.rows() - 1 || c == 0 || c == out.cols() - 1) {
                    out.set(r, c, obj.color);
                }
            }
        }
        return out;
    }
    if (variant == "largest") {
        auto objs = connected_components(input, Connectivity::four_neighbor, false);
        if (objs.empty()) throw ConstraintViolated("no objects");
        const GridObject* best = &objs.front();
        for (const auto& o : objs)
            if (o.size() > best->size()) best = &o;
        return crop(input, best->bounding_box);
    }
    throw UnknownFamily("unknown size variant: " + variant);
}

Grid solve_count(const Grid& input, const std::string& variant) {
    if (variant == "color") {
        auto objs = connected_components(input, Connectivity::four_neighbor, true);
        int n = 0;
        for (const auto& o : objs)
            if (o.color == colors::count_target) ++n;
        return count_bar(n, colors::count_target);
    }
    if (variant == "all") {
        auto objs = connected_components(input, Connectivity::four_neighbor, false);
        return count_bar(static_cast<int>(objs.size()), colors::count_all_bar);
    }
    if (variant == "cells") {
        const GridObject obj = single_object(input);
        return count_bar(obj.size(), obj.color);
    }
    throw UnknownFamily("unknown count variant: " + variant);
}

Grid solve_shape(const Grid& input, const std::string& variant) {
    const GridObject obj = single_object(input);
    const BoundingBox& box = obj.bounding_box;
    if (variant == "fill_bbox") {
        Grid out = input;
        for (int r = box.min_row; r <= box.max_row; ++r)
            for (int c = box.min_col; c <= box.max_col; ++c) out.set(r, c, obj.color);
        return out;
    }
    if (variant == "outline") {
        Grid out = input;
        for (const Coord& p : obj.cells) out.set(p.row, p.col, kBackground);
        for (int r = box.min_row; r <= box.max_row; ++r) {
            for (int c = box.min_col; c <= box.max_col; ++c) {
                if (r == box.min_row || r == box.max_row || c == box.min_col ||
                    c == box.max_col) {
                    out.set(r, c, obj.color);
                }
            }
        }
        return out;
    }
    if (variant == "duplicate") {
        const int dc = box.width() + 1;
        Grid out = input;
        for (const Coord& p : obj.cells) {
            if (!out.in_bounds(p.row, p.col + dc)) {
                throw OutOfBounds("duplicate copy leaves the canvas");
            }
            out.set(p.row, p.col + dc, input.at(p.row, p.col));
        }
        return out;
    }
    throw UnknownFamily("unknown shape variant: " + variant);
}

Grid solve_categorization(const Grid& input, const std::string& variant) {
    if (variant == "by_color") {
        // Category = color; rule: shift every color one step along the
        // 1..9 palette cycle.
        Grid out = input;
        for (int r = 0; r < input.rows(); ++r) {
            for (int c = 0; c < input.cols(); ++c) {
                CellValue v = input.at(r, c);
                if (v != kBackground) out.set(r, c, static_cast<CellValue>(v % 9 + 1));
            }
        }
        return out;
    }
    auto objs = connected_components(input, Connectivity::four_neighbor, false);
    if (objs.empty()) throw ConstraintViolated("no objects to categorize");
    Grid out = input;
    if (variant == "by_size") {
        // Category = cell count; rule: recolor by ascending size rank.
        std::set<int> sizes;
        for (const auto& o : objs) sizes.insert(o.size());
        std::map<int, CellValue> rank;
        CellValue next = 1;
        for (int s : sizes) rank[s] = next++;
        for (const auto& o : objs)
            for (const Coord& p : o.cells) out.set(p.row, p.col, rank[o.size()]);
        return out;
    }
    if (variant == "by_shape") {
        // Category = library shape; rule: recolor to the shape's index color.
        for (const auto& o : objs) {
            auto idx = identify_shape(o.cells);
            if (!idx) {
                throw AmbiguousCategory("object shape not in the library");
            }
            CellValue color = static_cast<CellValue>((*idx - 1) % 9 + 1);
            for (const Coord& p : o.cells) out.set(p.row, p.col, color);
        }
        return out;
    }
    throw UnknownFamily("unknown categorization variant: " + variant);
}

namespace {

struct Bar {
    int extent = 0;  // height for vertical bars, width for horizontal
    CellValue color = 0;
};

}  // namespace

Grid solve_sort(const Grid& input, SortKey key, SortDirection direction) {
    auto objs = connected_components(input, Connectivity::four_neighbor, false);
    if (objs.empty() || objs.size() > 9) {
        throw ConstraintViolated("sort expects 1-9 objects");
    }
    std::vector<int> slots;
    std::vector<Bar> bars;
    for (const auto& o : objs) {
        const BoundingBox& b = o.bounding_box;
        if (key == SortKey::height) {
            if (b.width() != 1 || o.size() != b.height() ||
                b.max_row != input.rows() - 1) {
                throw ConstraintViolated("expected bottom-aligned 1-wide bars");
            }
            slots.push_back(b.min_col);
            bars.push_back({b.height(), o.color});
        } else {
            if (b.height() != 1 || o.size() != b.width() || b.min_col != 0) {
                throw ConstraintViolated("expected left-aligned 1-tall bars");
            }
            slots.push_back(b.min_row);
            bars.push_back({b.width(), o.color});
        }
    }
    for (std::size_t i = 1; i < bars.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (bars[i].extent == bars[j].extent) {
                throw ConstraintViolated("sort keys must be pairwise distinct");
            }
        }
    }
    std::sort(slots.begin(), slots.end());
    std::sort(bars.begin(), bars.end(), [&](const Bar& a, const Bar& b) {
        return direction == SortDirection::ascending ? a.extent < b.extent
                                                     : a.extent > b.extent;
    });
    Grid out(input.rows(), input.cols());
    for (std::size_t i = 0; i < bars.size(); ++i) {
        if (key == SortKey::height) {
            for (int d = 0; d < bars[i].extent; ++d)
                out.set(input.rows() - 1 - d, slots[i], bars[i].color);
        } else {
            for (int d = 0; d < bars[i].extent; ++d)
                out.set(slots[i], d, bars[i].color);
        }
    }
    return out;
}

namespace {

struct BfsResult {
    std::vector<int> dist;
    std::vector<int> npaths;  // saturated at 2
};

constexpr Coord kOrtho[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};

BfsResult plan_bfs(const Grid& g, Coord start) {
    BfsResult res;
    res.dist.assign(static_cast<std::size_t>(g.rows()) * g.cols(), -1);
    res.npaths.assign(res.dist.size(), 0);
    auto id = [&](Coord p) { return static_cast<std::size_t>(p.row) * g.cols() + p.col; };
    std::deque<Coord> queue{start};
    res.dist[id(start)] = 0;
    res.npaths[id(start)] = 1;
    while (!queue.empty()) {
        Coord p = queue.front();
        queue.pop_front();
        for (const Coord& d : kOrtho) {
            Coord n{p.row + d.row, p.col + d.col};
            if (!g.in_bounds(n.row, n.col) || g.at(n.row, n.col) == colors::wall)
                continue;
            if (res.dist[id(n)] < 0) {
                res.dist[id(n)] = res.dist[id(p)] + 1;
                res.npaths[id(n)] = res.npaths[id(p)];
                queue.push_back(n);
            } else if (res.dist[id(n)] == res.dist[id(p)] + 1) {
                res.npaths[id(n)] = std::min(2, res.npaths[id(n)] + res.npaths[id(p)]);
            }
        }
    }
    return res;
}

Coord find_unique_cell(const Grid& g, CellValue color, const char* what) {
    Coord found{-1, -1};
    int n = 0;
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            if (g.at(r, c) == color) {
                found = {r, c};
                ++n;
            }
        }
    }
    if (n != 1) {
        throw ConstraintViolated(std::string("expected exactly one ") + what +
                                 " cell, found " + std::to_string(n));
    }
    return found;
}

}  // namespace

Grid solve_planning(const Grid& input, int step_count) {
    const Coord start = find_unique_cell(input, colors::agent, "agent");
    const Coord goal = find_unique_cell(input, colors::goal, "goal");
    const BfsResult bfs = plan_bfs(input, start);
    auto id = [&](Coord p) {
        return static_cast<std::size_t>(p.row) * input.cols() + p.col;
    };
    if (bfs.dist[id(goal)] != step_count) {
        throw ConstraintViolated("shortest path length " +
                                 std::to_string(bfs.dist[id(goal)]) +
                                 " does not match step count " +
                                 std::to_string(step_count));
    }
    if (bfs.npaths[id(goal)] != 1) {
        throw NoUniquePath("instance admits multiple shortest paths");
    }
    // Walk back from the goal; uniqueness makes the predecessor unambiguous.
    Grid out = input;
    Coord cur = goal;
    while (bfs.dist[id(cur)] > 0) {
        Coord pred{-1, -1};
        int candidates = 0;
        for (const Coord& d : kOrtho) {
            Coord n{cur.row + d.row, cur.col + d.col};
            if (!input.in_bounds(n.row, n.col) ||
                input.at(n.row, n.col) == colors::wall)
                continue;
            if (bfs.dist[id(n)] == bfs.dist[id(cur)] - 1) {
                pred = n;
                ++candidates;
            }
        }
        if (candidates != 1) {
            throw NoUniquePath("ambiguous predecessor on the path");
        }
        out.set(pred.row, pred.col, colors::trail);
        cur = pred;
    }
    out.set(goal.row, goal.col, colors::agent);
    return out;
}

Grid solve_gravity(const Grid& input, int applications) {
    Grid cur = input;
    for (int a = 0; a < applications; ++a) {
        // Settle until no object is airborne; bottom-most objects first so
        // one sweep usually suffices.
        for (int guard = 0; guard <= cur.rows(); ++guard) {
            auto objs = connected_components(cur, Connectivity::four_neighbor, true);
            std::sort(objs.begin(), objs.end(),
                      [](const GridObject& x, const GridObject& y) {
                          return x.bounding_box.max_row > y.bounding_box.max_row;
                      });
            bool moved = false;
            for (const auto& obj : objs) {
                for (const Coord& p : obj.cells) cur.set(p.row, p.col, kBackground);
                int drop = 0;
                auto fits = [&](int d) {
                    for (const Coord& p : obj.cells) {
                        if (p.row + d >= cur.rows()) return false;
                        if (cur.at(p.row + d, p.col) != kBackground) return false;
                    }
                    return true;
                };
                while (fits(drop + 1)) ++drop;
                for (const Coord& p : obj.cells) cur.set(p.row + drop, p.col, obj.color);
                if (drop > 0) moved = true;
            }
            if (!moved) break;
        }
    }
    return cur;
}

Grid solve_reflection(const Grid& input, int bounces) {
    const Coord emitter = find_unique_cell(input, colors::emitter, "emitter");
    const Coord marker = find_unique_cell(input, colors::ray_marker, "direction marker");
    if (input.at(emitter.row, emitter.col) == colors::wall) {
        throw DegenerateRay("emitter inside a wall");
    }
    int dr = marker.row - emitter.row;
    int dc = marker.col - emitter.col;
    if (std::abs(dr) != 1 || std::abs(dc) != 1) {
        throw DegenerateRay("direction marker must be diagonal to the emitter");
    }
    auto blocked = [&](int r, int c) {
        return !input.in_bounds(r, c) || input.at(r, c) == colors::wall;
    };
    Grid out = input;
    Coord pos = marker;
    int bounce_count = 0;
    for (int guard = 0; guard < 8 * kMaxDim * kMaxDim; ++guard) {
        const bool vert = blocked(pos.row + dr, pos.col);
        const bool horz = blocked(pos.row, pos.col + dc);
        const bool diag = blocked(pos.row + dr, pos.col + dc);
        if (vert || horz || diag) {
            if (bounce_count == bounces) break;
            ++bounce_count;
            if (vert && horz) {
                dr = -dr;
                dc = -dc;
            } else if (vert) {
                dr = -dr;
            } else if (horz) {
                dc = -dc;
            } else {
                dr = -dr;  // pure diagonal corner: reverse outright
                dc = -dc;
            }
            continue;
        }
        pos = {pos.row + dr, pos.col + dc};
        if (out.at(pos.row, pos.col) == kBackground) {
            out.set(pos.row, pos.col, colors::ray);
        }
    }
    return out;
}

Grid solve_expansion(const Grid& input, int applications) {
    Grid cur = input;
    for (int a = 0; a < applications; ++a) {
        // One ring: every background 4-neighbor of a source cell takes the
        // source color; obstacles never grow and are never overwritten.
        // Simultaneous claims resolve to the smallest color.
        std::map<std::pair<int, int>, CellValue> ring;
        for (int r = 0; r < cur.rows(); ++r) {
            for (int c = 0; c < cur.cols(); ++c) {
                CellValue v = cur.at(r, c);
                if (v == kBackground || v == colors::obstacle) continue;
                for (const Coord& d : kOrtho) {
                    int nr = r + d.row, nc = c + d.col;
                    if (!cur.in_bounds(nr, nc)) continue;
                    if (cur.at(nr, nc) != kBackground) continue;
                    auto [it, inserted] = ring.try_emplace({nr, nc}, v);
                    if (!inserted) it->second = std::min(it->second, v);
                }
            }
        }
        for (const auto& [cell, color] : ring) {
            cur.set(cell.first, cell.second, color);
        }
    }
    return cur;
}

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw ConstraintViolated(what);
}

}  // namespace

void validate_input(const TaskSpec& task, int variable_value, const Grid& input) {
    if (!task.variable.contains(variable_value)) {
        throw VariableOutOfRange(task.task_id + ": value out of range");
    }
    switch (task.family) {
        case Family::size: {
            if (task.variant == "largest") {
                auto objs = connected_components(input, Connectivity::four_neighbor, false);
                require(objs.size() >= 2, "size.largest needs >= 2 objects");
                std::set<int> sizes;
                for (const auto& o : objs) sizes.insert(o.size());
                require(sizes.size() == objs.size(), "object sizes must be distinct");
            } else {
                single_object(input);
            }
            require(input.rows() == variable_value && input.cols() == variable_value,
                    "canvas side must equal the size variable");
            break;
        }
        case Family::count: {
            if (task.variant == "color") {
                auto objs = connected_components(input, Connectivity::four_neighbor, true);
                int n = 0;
                for (const auto& o : objs)
                    if (o.color == colors::count_target) ++n;
                require(n == variable_value, "marked-color component count mismatch");
            } else if (task.variant == "all") {
                auto objs = connected_components(input, Connectivity::four_neighbor, false);
                require(static_cast<int>(objs.size()) == variable_value,
                        "component count mismatch");
            } else {
                require(single_object(input).size() == variable_value,
                        "object cell count mismatch");
            }
            break;
        }
        case Family::shape: {
            const GridObject obj = single_object(input);
            auto idx = identify_shape(obj.cells);
            require(idx && *idx == variable_value, "object is not library shape #" +
                                                       std::to_string(variable_value));
            break;
        }
        case Family::move: {
            const GridObject obj = single_object(input);
            const Coord step = move_step(move_direction_from_variant(task.variant));
            for (const Coord& p : obj.cells) {
                require(input.in_bounds(p.row + step.row * variable_value,
                                        p.col + step.col * variable_value),
                        "move destination leaves the canvas");
            }
            break;
        }
        case Family::rotation:
            single_object(input);
            break;
        case Family::symmetry: {
            auto objs = connected_components(input, Connectivity::four_neighbor, false);
            require(static_cast<int>(objs.size()) == variable_value,
                    "object count mismatch");
            if (task.variant == "diagonal") {
                require(input.rows() == input.cols(), "diagonal axis needs a square grid");
            }
            break;
        }
        case Family::categorization: {
            auto objs = connected_components(input, Connectivity::four_neighbor, false);
            require(!objs.empty(), "no objects");
            std::set<int> categories;
            for (const auto& o : objs) {
                if (task.variant == "by_color") {
                    categories.insert(o.color);
                } else if (task.variant == "by_size") {
                    categories.insert(o.size());
                } else {
                    auto idx = identify_shape(o.cells);
                    require(idx.has_value(), "object shape not in the library");
                    categories.insert(*idx);
                }
            }
            require(static_cast<int>(categories.size()) == variable_value,
                    "category count mismatch");
            break;
        }
        case Family::sort: {
            auto objs = connected_components(input, Connectivity::four_neighbor, false);
            require(static_cast<int>(objs.size()) == variable_value,
                    "element count mismatch");
            break;
        }
        case Family::planning: {
            const Coord start = find_unique_cell(input, colors::agent, "agent");
            const Coord goal = find_unique_cell(input, colors::goal, "goal");
            const BfsResult bfs = plan_bfs(input, start);
            std::size_t g = static_cast<std::size_t>(goal.row) * input.cols() + goal.col;
            require(bfs.dist[g] == variable_value, "path length mismatch");
            if (bfs.npaths[g] != 1) throw NoUniquePath("shortest path not unique");
            break;
        }
        case Family::gravity: {
            auto objs = connected_components(input, Connectivity::four_neighbor, true);
            require(static_cast<int>(objs.size()) == variable_value,
                    "object count mismatch");
            break;
        }
        case Family::reflection: {
            find_unique_cell(input, colors::emitter, "emitter");
            find_unique_cell(input, colors::ray_marker, "direction marker");
            break;
        }
        case Family::expansion: {
            bool has_source = false;
            for (int r = 0; r < input.rows() && !has_source; ++r)
                for (int c = 0; c < input.cols(); ++c)
                    if (input.at(r, c) != kBackground &&
                        input.at(r, c) != colors::obstacle) {
                        has_source = true;
                        break;
                    }
            require(has_source, "no expansion source");
            break;
        }
    }
}

Grid solve(const TaskSpec& task, int variable_value, const Grid& input) {
    validate_input(task, variable_value, input);
    switch (task.family) {
        case Family::size: return solve_size(input, task.variant);
        case Family::count: return solve_count(input, task.variant);
        case Family::shape: return solve_shape(input, task.variant);
        case Family::move:
            return solve_move(input, move_direction_from_variant(task.variant),
                              variable_value);
        case Family::rotation:
            return solve_rotation(input,
                                  task.variant == "endpoint" ? RotationPivot::endpoint
                                                             : RotationPivot::center,
                                  variable_value);
        case Family::symmetry: {
            MirrorAxis axis = task.variant == "horizontal" ? MirrorAxis::horizontal
                              : task.variant == "vertical" ? MirrorAxis::vertical
                                                           : MirrorAxis::main_diagonal;
            return solve_symmetry(input, axis);
        }
        case Family::categorization: return solve_categorization(input, task.variant);
        case Family::sort:
            return solve_sort(input,
                              task.variant == "width_asc" ? SortKey::width
                                                          : SortKey::height,
                              task.variant == "height_desc" ? SortDirection::descending
                                                            : SortDirection::ascending);
        case Family::planning: return solve_planning(input, variable_value);
        case Family::gravity: return solve_gravity(input, variable_value);
        case Family::reflection: return solve_reflection(input, variable_value);
        case Family::expansion: return solve_expansion(input, variable_value);
    }
    throw Error("unreachable");
}

}  // namespace gridbench
