#include "gridbench/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gridbench/rng.hpp"
#include "gridbench/shapes.hpp"
#include "gridbench/solver.hpp"

namespace gridbench {

namespace {

struct Reject : Error {
    using Error::Error;
};

CellValue random_color(Rng& rng, std::initializer_list<int> exclude = {}) {
    for (;;) {
        int c = rng.range(1, 9);
        if (std::find(exclude.begin(), exclude.end(), c) == exclude.end())
            return static_cast<CellValue>(c);
    }
}

// Random 4-connected polyomino of n cells within a max_h x max_w box.
std::vector<Coord> random_blob(Rng& rng, int n, int max_h, int max_w) {
    std::set<Coord> cells{{0, 0}};
    int min_r = 0, max_r = 0, min_c = 0, max_c = 0;
    int guard = 0;
    while (static_cast<int>(cells.size()) < n) {
        if (++guard > 500) throw Reject("blob growth stalled");
        std::vector<Coord> pool(cells.begin(), cells.end());
        const Coord& base = rng.pick(pool);
        static constexpr Coord dirs[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
        Coord d = dirs[rng.range(0, 3)];
        Coord cand{base.row + d.row, base.col + d.col};
        if (cells.count(cand)) continue;
        int nmin_r = std::min(min_r, cand.row), nmax_r = std::max(max_r, cand.row);
        int nmin_c = std::min(min_c, cand.col), nmax_c = std::max(max_c, cand.col);
        if (nmax_r - nmin_r + 1 > max_h || nmax_c - nmin_c + 1 > max_w) continue;
        cells.insert(cand);
        min_r = nmin_r;
        max_r = nmax_r;
        min_c = nmin_c;
        max_c = nmax_c;
    }
    return normalize_cells({cells.begin(), cells.end()});
}

BoundingBox bbox_of(const std::vector<Coord>& cells) {
    BoundingBox b{cells[0].row, cells[0].col, cells[0].row, cells[0].col};
    for (const Coord& p : cells) {
        b.min_row = std::min(b.min_row, p.row);
        b.min_col = std::min(b.min_col, p.col);
        b.max_row = std::max(b.max_row, p.row);
        b.max_col = std::max(b.max_col, p.col);
    }
    return b;
}

bool area_clear(const Grid& g, const std::vector<Coord>& cells, int r0, int c0,
                int gap) {
    for (const Coord& p : cells) {
        for (int dr = -gap; dr <= gap; ++dr) {
            for (int dc = -gap; dc <= gap; ++dc) {
                int r = r0 + p.row + dr, c = c0 + p.col + dc;
                if (g.in_bounds(r, c) && g.at(r, c) != kBackground) return false;
            }
        }
    }
    return true;
}

void paint(Grid& g, const std::vector<Coord>& cells, int r0, int c0, CellValue color) {
    for (const Coord& p : cells) g.set(r0 + p.row, c0 + p.col, color);
}

// Places normalized cells at a random offset with `gap` empty cells around
// them; offsets restricted to [r_lo, r_hi] x [c_lo, c_hi].
void place_in_region(Grid& g, Rng& rng, const std::vector<Coord>& cells,
                     CellValue color, int gap, int r_lo, int r_hi, int c_lo,
                     int c_hi) {
    if (r_hi < r_lo || c_hi < c_lo) throw Reject("no room for object");
    for (int attempt = 0; attempt < 60; ++attempt) {
        int r0 = rng.range(r_lo, r_hi);
        int c0 = rng.range(c_lo, c_hi);
        if (!area_clear(g, cells, r0, c0, gap)) continue;
        paint(g, cells, r0, c0, color);
        return;
    }
    throw Reject("placement failed");
}

void place_anywhere(Grid& g, Rng& rng, const std::vector<Coord>& cells,
                    CellValue color, int gap = 1, int margin = 0) {
    const BoundingBox b = bbox_of(cells);
    place_in_region(g, rng, cells, color, gap, margin,
                    g.rows() - b.height() - margin, margin,
                    g.cols() - b.width() - margin);
}

// --- per-family candidate generators (each may throw Reject) ---

Grid gen_size(const TaskSpec& task, int value, Rng& rng) {
    Grid g(value, value);
    if (task.variant == "largest") {
        const int k = rng.range(2, value >= 14 ? 4 : 3);
        std::vector<int> sizes{2, 3, 4, 5, 6, 7, 8};
        rng.shuffle(sizes);
        for (int i = 0; i < k; ++i) {
            place_anywhere(g, rng, random_blob(rng, sizes[i], 3, 3), random_color(rng));
        }
    } else {
        const int margin = task.variant == "frame" ? 1 : 0;
        place_anywhere(g, rng, random_blob(rng, rng.range(3, 8), 4, 4),
                       random_color(rng), 1, margin);
    }
    return g;
}

Grid gen_count(const TaskSpec& task, int value, Rng& rng) {
    if (task.variant == "cells") {
        const int side = rng.range(6, 12);
        Grid g(side, side);
        place_anywhere(g, rng, random_blob(rng, value, 4, 4), random_color(rng));
        return g;
    }
    const int side = std::min(18, 10 + value / 2 + rng.range(0, 2));
    Grid g(side, side);
    if (task.variant == "color") {
        for (int i = 0; i < value; ++i) {
            place_anywhere(g, rng, random_blob(rng, rng.range(1, 2), 2, 2),
                           colors::count_target);
        }
        const int distractors = rng.range(1, 3);
        for (int i = 0; i < distractors; ++i) {
            place_anywhere(g, rng, random_blob(rng, rng.range(1, 2), 2, 2),
                           random_color(rng, {colors::count_target}));
        }
    } else {
        for (int i = 0; i < value; ++i) {
            place_anywhere(g, rng, random_blob(rng, rng.range(1, 3), 2, 2),
                           random_color(rng));
        }
    }
    return g;
}

Grid gen_shape(const TaskSpec& task, int value, Rng& rng) {
    const auto& cells = library_shape(value);
    const BoundingBox b = bbox_of(cells);
    const CellValue color = random_color(rng);
    if (task.variant == "duplicate") {
        const int cols = std::min(kMaxDim - 1, 2 * b.width() + 1 + rng.range(1, 5));
        const int rows = rng.range(std::max(b.height() + 1, 5), 10);
        Grid g(rows, cols);
        place_in_region(g, rng, cells, color, 0, 0, rows - b.height(), 0,
                        cols - 2 * b.width() - 1);
        return g;
    }
    const int side = rng.range(std::max(b.height() + 2, 7), 12);
    Grid g(side, side);
    place_anywhere(g, rng, cells, color);
    return g;
}

Grid gen_move(const TaskSpec& task, int value, Rng& rng) {
    const Coord step = move_step(move_direction_from_variant(task.variant));
    const int d = value;
    const int max_h = step.row != 0 ? std::max(1, std::min(3, kMaxDim - d)) : 3;
    const int max_w = step.col != 0 ? std::max(1, std::min(3, kMaxDim - d)) : 3;
    const auto cells = random_blob(rng, rng.range(1, std::min(4, max_h * max_w)),
                                   max_h, max_w);
    const BoundingBox b = bbox_of(cells);

    auto span = [&](int moving, int extent) {
        if (!moving) return rng.range(std::max(extent + 1, 5), 12);
        int need = extent + d;
        if (need > kMaxDim) throw Reject("move span exceeds canvas cap");
        return need + rng.range(0, std::min(3, kMaxDim - need));
    };
    const int rows = span(step.row, b.height());
    const int cols = span(step.col, b.width());
    Grid g(rows, cols);

    const int r_lo = step.row < 0 ? d : 0;
    const int r_hi = rows - b.height() - (step.row > 0 ? d : 0);
    const int c_lo = step.col < 0 ? d : 0;
    const int c_hi = cols - b.width() - (step.col > 0 ? d : 0);
    place_in_region(g, rng, cells, random_color(rng), 0, r_lo, r_hi, c_lo, c_hi);
    return g;
}

Grid gen_rotation(const TaskSpec& task, int value, Rng& rng) {
    (void)value;
    std::vector<Coord> cells;
    for (int tries = 0;; ++tries) {
        if (tries > 40) throw Reject("no parity-compatible blob");
        cells = random_blob(rng, rng.range(3, 6), 3, 3);
        if (task.variant != "center") break;
        const BoundingBox b = bbox_of(cells);
        if (b.height() % 2 == b.width() % 2) break;  // lattice-preserving pivot
    }
    const int side = rng.range(9, 13);
    Grid g(side, side);
    // Keep a rotation-sized margin so the image usually stays in bounds;
    // the accept check rejects the rest.
    const int margin = 3;
    place_anywhere(g, rng, cells, random_color(rng), 0, margin);
    return g;
}

Grid gen_symmetry(const TaskSpec& task, int value, Rng& rng) {
    const int side = std::min(rng.range(9 + value, 13 + value), 24);
    Grid g(side, side);
    for (int i = 0; i < value; ++i) {
        if (task.variant == "diagonal") {
            // Strictly above the main diagonal so mirrors never collide.
            const auto cells = random_blob(rng, rng.range(1, 2), 1, 2);
            const BoundingBox b = bbox_of(cells);
            for (int attempt = 0;; ++attempt) {
                if (attempt > 60) throw Reject("placement failed");
                int r0 = rng.range(0, side - 1 - b.height());
                int c_lo = r0 + b.height();
                int c_hi = side - b.width();
                if (c_lo > c_hi) continue;
                int c0 = rng.range(c_lo, c_hi);
                if (!area_clear(g, cells, r0, c0, 1)) continue;
                paint(g, cells, r0, c0, random_color(rng));
                break;
            }
        } else {
            const auto cells = random_blob(rng, rng.range(1, 3), 2, 2);
            const BoundingBox b = bbox_of(cells);
            const int half = side / 2 - 1;
            if (task.variant == "horizontal") {
                place_in_region(g, rng, cells, random_color(rng), 1, 0,
                                half - b.height() + 1, 0, side - b.width());
            } else {
                place_in_region(g, rng, cells, random_color(rng), 1, 0,
                                side - b.height(), 0, half - b.width() + 1);
            }
        }
    }
    return g;
}

Grid gen_categorization(const TaskSpec& task, int value, Rng& rng) {
    const int side = rng.range(10, 14);
    Grid g(side, side);
    if (task.variant == "by_color") {
        std::vector<int> palette{1, 2, 3, 4, 5, 6, 7, 8, 9};
        rng.shuffle(palette);
        const int extra = rng.range(0, 2);
        for (int i = 0; i < value + extra; ++i) {
            CellValue color = static_cast<CellValue>(palette[i % value]);
            place_anywhere(g, rng, random_blob(rng, rng.range(1, 3), 2, 2), color);
        }
    } else if (task.variant == "by_size") {
        std::vector<int> sizes{1, 2, 3, 4, 5, 6, 7};
        rng.shuffle(sizes);
        for (int i = 0; i < value; ++i) {
            place_anywhere(g, rng, random_blob(rng, sizes[i], 3, 3), random_color(rng));
        }
    } else {
        std::vector<int> indices(kShapeCount);
        std::iota(indices.begin(), indices.end(), 1);
        rng.shuffle(indices);
        for (int i = 0; i < value; ++i) {
            place_anywhere(g, rng, library_shape(indices[i]), random_color(rng));
        }
    }
    return g;
}

Grid gen_sort(const TaskSpec& task, int value, Rng& rng) {
    std::vector<int> extents{1, 2, 3, 4, 5, 6, 7, 8, 9};
    rng.shuffle(extents);
    extents.resize(value);
    const int longest = *std::max_element(extents.begin(), extents.end());

    // Bars sit in every other slot so they never touch.
    std::vector<int> slots;
    for (int i = 0; i < value; ++i) slots.push_back(2 * i + rng.range(0, 1));
    const int span = slots.back() + 1;

    if (task.variant == "width_asc") {
        Grid g(std::max(span + rng.range(0, 2), 3),
               std::max(longest + rng.range(1, 3), 4));
        for (int i = 0; i < value; ++i) {
            CellValue color = random_color(rng);
            for (int c = 0; c < extents[i]; ++c) g.set(slots[i], c, color);
        }
        return g;
    }
    Grid g(std::max(longest + rng.range(1, 3), 4),
           std::max(span + rng.range(0, 2), 3));
    for (int i = 0; i < value; ++i) {
        CellValue color = random_color(rng);
        for (int d = 0; d < extents[i]; ++d)
            g.set(g.rows() - 1 - d, slots[i], color);
    }
    return g;
}

Grid gen_planning(const TaskSpec& task, int value, Rng& rng) {
    const int lo = std::max(5, value / 2 + 3);
    const int side = rng.range(std::min(lo, 12), std::min(lo + 4, 13));
    Grid g(side, side);

    if (task.variant == "scatter") {
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c)
                if (rng.chance(0.22)) g.set(r, c, colors::wall);
    } else if (task.variant == "rooms") {
        const int segments = rng.range(1, 3);
        for (int s = 0; s < segments; ++s) {
            const bool horiz = rng.chance(0.5);
            const int len = rng.range(2, side - 2);
            int r = rng.range(0, side - 1), c = rng.range(0, side - 1);
            for (int i = 0; i < len; ++i) {
                int rr = horiz ? r : r + i, cc = horiz ? c + i : c;
                if (g.in_bounds(rr, cc)) g.set(rr, cc, colors::wall);
            }
        }
    } else {
        const int nubs = rng.range(0, 2);
        for (int i = 0; i < nubs; ++i)
            g.set(rng.range(0, side - 1), rng.range(0, side - 1), colors::wall);
    }

    // Pick a start, then a goal at the exact distance with a unique path.
    for (int attempt = 0; attempt < 20; ++attempt) {
        int sr = rng.range(0, side - 1), sc = rng.range(0, side - 1);
        if (g.at(sr, sc) != kBackground) continue;
        // BFS with saturating path counts from the candidate start.
        std::vector<int> dist(static_cast<std::size_t>(side) * side, -1);
        std::vector<int> npaths(dist.size(), 0);
        std::vector<Coord> queue{{sr, sc}};
        auto id = [&](int r, int c) { return static_cast<std::size_t>(r) * side + c; };
        dist[id(sr, sc)] = 0;
        npaths[id(sr, sc)] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Coord p = queue[head];
            static constexpr Coord dirs[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
            for (const Coord& d : dirs) {
                int nr = p.row + d.row, nc = p.col + d.col;
                if (!g.in_bounds(nr, nc) || g.at(nr, nc) == colors::wall) continue;
                if (dist[id(nr, nc)] < 0) {
                    dist[id(nr, nc)] = dist[id(p.row, p.col)] + 1;
                    npaths[id(nr, nc)] = npaths[id(p.row, p.col)];
                    queue.push_back({nr, nc});
                } else if (dist[id(nr, nc)] == dist[id(p.row, p.col)] + 1) {
                    npaths[id(nr, nc)] = std::min(2, npaths[id(nr, nc)] + npaths[id(p.row, p.col)]);
                }
            }
        }
        std::vector<Coord> goals;
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c)
                if (dist[id(r, c)] == value && npaths[id(r, c)] == 1 &&
                    g.at(r, c) == kBackground && !(r == sr && c == sc))
                    goals.push_back({r, c});
        if (goals.empty()) continue;
        Coord goal = rng.pick(goals);
        g.set(sr, sc, colors::agent);
        g.set(goal.row, goal.col, colors::goal);
        return g;
    }
    throw Reject("no unique-path goal found");
}

Grid gen_gravity(const TaskSpec& task, int value, Rng& rng) {
    const int side = std::min(rng.range(9 + value, 13 + value), 24);
    Grid g(side, side);
    for (int i = 0; i < value; ++i) {
        std::vector<Coord> cells;
        const bool block = task.variant == "blocks" ||
                           (task.variant == "mixed" && rng.chance(0.5));
        if (block) {
            const int h = rng.range(1, 2), w = rng.range(1, 3);
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c) cells.push_back({r, c});
        } else {
            cells = library_shape(rng.range(1, kShapeCount));
        }
        place_anywhere(g, rng, cells, random_color(rng, {colors::wall}));
    }
    return g;
}

Grid gen_reflection(const TaskSpec& task, int value, Rng& rng) {
    (void)value;
    int ri, ci;
    if (task.variant == "wide") {
        ri = rng.range(3, 5);
        ci = rng.range(9, 14);
    } else if (task.variant == "tall") {
        ri = rng.range(9, 14);
        ci = rng.range(3, 5);
    } else {
        ri = rng.range(6, 10);
        ci = ri;
    }
    Grid g(ri + 2, ci + 2);
    for (int r = 0; r < g.rows(); ++r) {
        for (int c = 0; c < g.cols(); ++c) {
            if (r == 0 || r == g.rows() - 1 || c == 0 || c == g.cols() - 1)
                g.set(r, c, colors::wall);
        }
    }
    for (int attempt = 0; attempt < 40; ++attempt) {
        int er = rng.range(1, ri), ec = rng.range(1, ci);
        int dr = rng.chance(0.5) ? 1 : -1, dc = rng.chance(0.5) ? 1 : -1;
        int mr = er + dr, mc = ec + dc;
        if (g.at(mr, mc) == colors::wall) continue;
        g.set(er, ec, colors::emitter);
        g.set(mr, mc, colors::ray_marker);
        return g;
    }
    throw Reject("no emitter placement");
}

Grid gen_expansion(const TaskSpec& task, int value, Rng& rng) {
    (void)value;
    const int side = rng.range(11, 15);
    Grid g(side, side);
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c)
            if (rng.chance(0.08)) g.set(r, c, colors::obstacle);

    auto clear_spot = [&](const std::vector<Coord>& cells, CellValue color) {
        for (int attempt = 0; attempt < 60; ++attempt) {
            const BoundingBox b = bbox_of(cells);
            int r0 = rng.range(0, side - b.height());
            int c0 = rng.range(0, side - b.width());
            if (!area_clear(g, cells, r0, c0, 1)) continue;
            paint(g, cells, r0, c0, color);
            return;
        }
        throw Reject("no room for source");
    };
    if (task.variant == "point") {
        clear_spot({{0, 0}}, colors::agent);
    } else if (task.variant == "bar") {
        clear_spot({{0, 0}, {0, 1}, {0, 2}}, colors::agent);
    } else {
        clear_spot({{0, 0}}, colors::agent);
        clear_spot({{0, 0}}, colors::goal);
    }
    return g;
}

Grid generate_candidate(const TaskSpec& task, int value, Rng& rng) {
    switch (task.family) {
        case Family::size: return gen_size(task, value, rng);
        case Family::count: return gen_count(task, value, rng);
        case Family::shape: return gen_shape(task, value, rng);
        case Family::move: return gen_move(task, value, rng);
        case Family::rotation: return gen_rotation(task, value, rng);
        case Family::symmetry: return gen_symmetry(task, value, rng);
        case Family::categorization: return gen_categorization(task, value, rng);
        case Family::sort: return gen_sort(task, value, rng);
        case Family::planning: return gen_planning(task, value, rng);
        case Family::gravity: return gen_gravity(task, value, rng);
        case Family::reflection: return gen_reflection(task, value, rng);
        case Family::expansion: return gen_expansion(task, value, rng);
    }
    throw Error("unreachable");
}

}  // namespace

std::string Episode::episode_id() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "-v%02d-i%04d", variable_value, index);
    return task_id + buf;
}

Grid generate_input(const TaskSpec& task, int variable_value, std::uint64_t seed) {
    if (!task.variable.contains(variable_value)) {
        throw VariableOutOfRange(task.task_id + ": value " +
                                 std::to_string(variable_value) + " out of range");
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < kGenerationAttemptCap; ++attempt) {
        try {
            Grid g = generate_candidate(task, variable_value, rng);
            validate_input(task, variable_value, g);
            solve(task, variable_value, g);  // solver must be applicable
            return g;
        } catch (const VariableOutOfRange&) {
            throw;
        } catch (const Error&) {
            // rejected candidate; redraw
        }
    }
    throw GenerationExhausted(task.task_id + " value " +
                              std::to_string(variable_value) + ": attempt cap hit");
}

Episode generate_episode(const TaskSpec& task, int variable_value,
                         std::uint64_t master_seed, std::uint64_t derived_seed,
                         int index, int n_train) {
    if (n_train < 1) throw ConfigError("n_train must be >= 1");
    Episode ep;
    ep.task_id = task.task_id;
    ep.variable_value = variable_value;
    ep.master_seed = master_seed;
    ep.derived_seed = derived_seed;
    ep.index = index;

    std::vector<Grid> inputs;
    for (int i = 0; i <= n_train; ++i) {
        Grid g;
        bool distinct = false;
        for (int redraw = 0; redraw < 64 && !distinct; ++redraw) {
            g = generate_input(task, variable_value,
                               mix_seed(derived_seed, static_cast<std::uint64_t>(
                                                          i + 100 * redraw)));
            distinct = std::none_of(inputs.begin(), inputs.end(), [&](const Grid& p) {
                return equals_exact(p, g);
            });
        }
        if (!distinct) {
            throw GenerationExhausted(task.task_id + ": could not draw distinct inputs");
        }
        inputs.push_back(std::move(g));
    }
    for (int i = 0; i < n_train; ++i) {
        Grid out = solve(task, variable_value, inputs[static_cast<std::size_t>(i)]);
        ep.train_pairs.emplace_back(inputs[static_cast<std::size_t>(i)], std::move(out));
    }
    ep.test_input = inputs.back();
    ep.test_output = solve(task, variable_value, ep.test_input);
    return ep;
}

DatasetSummary generate_dataset(const BudgetConfig& config, std::uint64_t master_seed,
                                int n_train, const EpisodeSink& sink) {
    DatasetSummary summary;
    for (const TaskSpec& task : catalog()) {
        for (int value = task.variable.min; value <= task.variable.max; ++value) {
            const int n = instances_for(task, value, config);
            for (int index = 0; index < n; ++index) {
                const std::uint64_t seed =
                    derive_seed(master_seed, task.task_id, value, index);
                try {
                    Episode ep = generate_episode(task, value, master_seed, seed,
                                                  index, n_train);
                    sink(ep);
                    ++summary.per_family[task.family];
                    ++summary.total;
                } catch (const GenerationExhausted&) {
                    summary.failures[task.task_id].emplace_back(value, index);
                }
            }
        }
    }
    return summary;
}

}  // namespace gridbench
