#include <doctest.h>

#include "gridbench/shapes.hpp"
#include "gridbench/solver.hpp"

using namespace gridbench;

namespace {

Grid cell_at(int rows, int cols, int r, int c, CellValue v) {
    Grid g(rows, cols);
    g.set(r, c, v);
    return g;
}

}  // namespace

TEST_CASE("solve_move worked examples") {
    Grid up = solve_move(cell_at(5, 5, 2, 2, 2), MoveDirection::up, 2);
    CHECK(equals_exact(up, cell_at(5, 5, 0, 2, 2)));

    Grid diag = solve_move(cell_at(5, 5, 4, 0, 3), MoveDirection::upper_right, 4);
    CHECK(equals_exact(diag, cell_at(5, 5, 0, 4, 3)));

    // distance d then the reverse direction restores the grid
    Grid g = cell_at(6, 6, 3, 1, 7);
    CHECK(equals_exact(solve_move(solve_move(g, MoveDirection::right, 3),
                                  MoveDirection::left, 3),
                       g));
    CHECK_THROWS_AS(solve_move(cell_at(3, 3, 0, 0, 2), MoveDirection::up, 1),
                    OutOfBounds);
}

TEST_CASE("solve_rotation worked examples") {
    // L-triomino {(0,0),(1,0),(1,1)}, center pivot, 2 turns -> {(0,0),(0,1),(1,1)}
    Grid l(4, 4);
    l.set(0, 0, 1);
    l.set(1, 0, 1);
    l.set(1, 1, 1);
    Grid expect(4, 4);
    expect.set(0, 0, 1);
    expect.set(0, 1, 1);
    expect.set(1, 1, 1);
    CHECK(equals_exact(solve_rotation(l, RotationPivot::center, 2), expect));

    // single cell: fixed point under both pivots
    Grid dot = cell_at(3, 3, 1, 1, 5);
    CHECK(equals_exact(solve_rotation(dot, RotationPivot::center, 1), dot));
    CHECK(equals_exact(solve_rotation(dot, RotationPivot::endpoint, 3), dot));

    // endpoint pivot = scan-first cell: (1,1) stays put, (1,2)->(2,1),
    // (2,1)->(1,0)
    Grid g(5, 5);
    g.set(1, 1, 2);
    g.set(1, 2, 2);
    g.set(2, 1, 2);
    Grid turned = solve_rotation(g, RotationPivot::endpoint, 1);
    Grid expect_ep(5, 5);
    expect_ep.set(1, 1, 2);
    expect_ep.set(2, 1, 2);
    expect_ep.set(1, 0, 2);
    CHECK(equals_exact(turned, expect_ep));

    // center pivot preserves the bounding box, so 1 + 3 turns = identity
    CHECK(equals_exact(
        solve_rotation(solve_rotation(g, RotationPivot::center, 1),
                       RotationPivot::center, 3),
        g));

    CHECK_THROWS_AS(solve_rotation(g, RotationPivot::center, 0), VariableOutOfRange);
}

TEST_CASE("solve_symmetry worked examples") {
    // cell at (0,0) on 3x3, vertical middle-column axis -> adds (0,2)
    Grid g = cell_at(3, 3, 0, 0, 1);
    Grid out = solve_symmetry(g, MirrorAxis::vertical);
    CHECK(out.at(0, 0) == 1);
    CHECK(out.at(0, 2) == 1);

    // already-symmetric input is a fixed point; applying twice = once
    CHECK(equals_exact(solve_symmetry(out, MirrorAxis::vertical), out));
    Grid h = cell_at(4, 4, 3, 1, 6);
    CHECK(equals_exact(solve_symmetry(solve_symmetry(h, MirrorAxis::horizontal),
                                      MirrorAxis::horizontal),
                       solve_symmetry(h, MirrorAxis::horizontal)));

    CHECK_THROWS_AS(solve_symmetry(Grid(2, 3), MirrorAxis::main_diagonal),
                    ShapeMismatch);
}

TEST_CASE("solve_size variants") {
    Grid g(5, 5);
    g.set(1, 1, 4);
    g.set(1, 2, 4);
    CHECK(equals_exact(solve_size(g, "crop"), Grid{{4, 4}}));

    Grid framed = solve_size(g, "frame");
    CHECK(framed.at(0, 0) == 4);
    CHECK(framed.at(4, 4) == 4);
    CHECK(framed.at(1, 1) == 4);
    CHECK(framed.at(2, 2) == 0);

    Grid multi(6, 6);
    multi.set(0, 0, 2);
    multi.set(4, 3, 3);
    multi.set(4, 4, 3);
    multi.set(5, 3, 3);
    CHECK(equals_exact(solve_size(multi, "largest"), Grid{{3, 3}, {3, 0}}));
}

TEST_CASE("solve_count conventions") {
    CHECK(equals_exact(solve_count(Grid(4, 4), "all"), Grid(1, 1)));  // empty case

    Grid three(5, 5);
    three.set(0, 0, 5);
    three.set(2, 2, 5);
    three.set(4, 4, 5);
    CHECK(equals_exact(solve_count(three, "all"), Grid{{5, 5, 5}}));

    Grid mixed(5, 5);
    mixed.set(0, 0, 3);
    mixed.set(2, 2, 3);
    mixed.set(4, 4, 7);  // not the counted color
    CHECK(equals_exact(solve_count(mixed, "color"), Grid{{3, 3}}));

    Grid blob(4, 4);
    blob.set(1, 1, 6);
    blob.set(1, 2, 6);
    blob.set(2, 1, 6);
    CHECK(equals_exact(solve_count(blob, "cells"), Grid{{6, 6, 6}}));
}

TEST_CASE("solve_shape variants") {
    Grid g(4, 6);
    g.set(1, 1, 8);
    g.set(2, 1, 8);
    g.set(2, 2, 8);
    Grid filled = solve_shape(g, "fill_bbox");
    CHECK(filled.at(1, 2) == 8);

    Grid dup = solve_shape(g, "duplicate");
    CHECK(dup.at(1, 1) == 8);
    CHECK(dup.at(1, 4) == 8);  // shifted by bbox width + 1 = 3
    CHECK(dup.at(2, 5) == 8);

    // outline of a solid 3x3 block leaves the middle empty
    Grid solid(5, 5);
    for (int r = 1; r <= 3; ++r)
        for (int c = 1; c <= 3; ++c) solid.set(r, c, 2);
    Grid outlined = solve_shape(solid, "outline");
    CHECK(outlined.at(2, 2) == 0);
    CHECK(outlined.at(1, 1) == 2);
}

TEST_CASE("solve_categorization variants") {
    Grid palette{{1, 0, 9}};
    Grid cycled = solve_categorization(palette, "by_color");
    CHECK(cycled.at(0, 0) == 2);
    CHECK(cycled.at(0, 2) == 1);  // 9 wraps to 1

    Grid sized(5, 5);
    sized.set(0, 0, 7);  // size 1 -> rank color 1
    sized.set(2, 0, 3);
    sized.set(2, 1, 3);  // size 2 -> rank color 2
    Grid ranked = solve_categorization(sized, "by_size");
    CHECK(ranked.at(0, 0) == 1);
    CHECK(ranked.at(2, 0) == 2);

    Grid unknown(4, 4);  // 2x2 square missing one corner is shape #4 (L)
    unknown.set(0, 0, 5);
    unknown.set(1, 0, 5);
    unknown.set(1, 1, 5);
    CHECK_NOTHROW(solve_categorization(unknown, "by_shape"));
    Grid bad(5, 5);  // 5-cell cross with a tail: not in the library
    bad.set(0, 0, 5);
    bad.set(0, 1, 5);
    bad.set(0, 2, 5);
    bad.set(1, 0, 5);
    bad.set(1, 2, 5);
    CHECK_THROWS_AS(solve_categorization(bad, "by_shape"), AmbiguousCategory);
}

TEST_CASE("solve_sort worked example") {
    // bars of heights 3,1,2 ascending -> heights 1,2,3 left-to-right
    Grid g(4, 5);
    for (int d = 0; d < 3; ++d) g.set(3 - d, 0, 2);
    g.set(3, 2, 3);
    for (int d = 0; d < 2; ++d) g.set(3 - d, 4, 4);
    Grid sorted = solve_sort(g, SortKey::height, SortDirection::ascending);
    Grid expect(4, 5);
    expect.set(3, 0, 3);
    for (int d = 0; d < 2; ++d) expect.set(3 - d, 2, 4);
    for (int d = 0; d < 3; ++d) expect.set(3 - d, 4, 2);
    CHECK(equals_exact(sorted, expect));

    // single object and already-sorted inputs are fixed points
    Grid one(3, 3);
    one.set(2, 1, 5);
    CHECK(equals_exact(solve_sort(one, SortKey::height, SortDirection::ascending), one));
    CHECK(equals_exact(solve_sort(sorted, SortKey::height, SortDirection::ascending),
                       sorted));

    Grid tie(3, 4);
    tie.set(2, 0, 2);
    tie.set(2, 2, 3);
    CHECK_THROWS_AS(solve_sort(tie, SortKey::height, SortDirection::ascending),
                    ConstraintViolated);
}

TEST_CASE("solve_planning worked examples") {
    // step_count = 1: one trail cell, agent at goal
    Grid g(3, 3);
    g.set(0, 0, colors::agent);
    g.set(0, 1, colors::goal);
    Grid out = solve_planning(g, 1);
    CHECK(out.at(0, 0) == colors::trail);
    CHECK(out.at(0, 1) == colors::agent);

    // corridor maze with a unique 4-step path
    Grid maze(3, 5);
    for (int c = 0; c < 5; ++c) maze.set(1, c, colors::wall);
    maze.set(1, 4, 0);
    maze.set(0, 0, colors::agent);
    maze.set(0, 2, colors::goal);
    Grid path = solve_planning(maze, 2);
    CHECK(path.at(0, 1) == colors::trail);
    CHECK(path.at(0, 2) == colors::agent);

    // two shortest paths -> NoUniquePath
    Grid open(3, 3);
    open.set(0, 0, colors::agent);
    open.set(1, 1, colors::goal);
    CHECK_THROWS_AS(solve_planning(open, 2), NoUniquePath);
}

TEST_CASE("solve_gravity worked examples") {
    CHECK(equals_exact(solve_gravity(Grid{{2}, {0}, {0}}, 1), Grid{{0}, {0}, {2}}));

    Grid grounded{{0, 0}, {3, 3}};
    CHECK(equals_exact(solve_gravity(grounded, 1), grounded));

    // k applications = iterating single applications to the fixpoint
    Grid stack(5, 3);
    stack.set(0, 1, 2);
    stack.set(2, 1, 4);
    Grid eight = solve_gravity(stack, 8);
    Grid iterated = stack;
    for (int i = 0; i < 8; ++i) iterated = solve_gravity(iterated, 1);
    CHECK(equals_exact(eight, iterated));
    CHECK(equals_exact(solve_gravity(eight, 1), eight));
    CHECK(eight.at(4, 1) == 4);
    CHECK(eight.at(3, 1) == 2);  // rigid objects stack in fall order
}

TEST_CASE("solve_reflection hand-traced example") {
    // 5x5 open box, emitter bottom-left, heading upper-right, 1 bounce.
    Grid g(5, 5);
    g.set(4, 0, colors::emitter);
    g.set(3, 1, colors::ray_marker);
    Grid out = solve_reflection(g, 1);
    CHECK(out.at(2, 2) == colors::ray);
    CHECK(out.at(1, 3) == colors::ray);
    CHECK(out.at(0, 4) == colors::ray);
    // nothing else painted
    int rays = 0;
    for (CellValue v : out.cells()) rays += v == colors::ray;
    CHECK(rays == 3);

    // corner hit reverses both components: with 2 bounces the ray retraces
    // toward the emitter and stops at the second wall contact.
    Grid two = solve_reflection(g, 2);
    CHECK(equals_exact(two, out));  // retraced cells are already painted

    Grid degenerate(3, 3);
    degenerate.set(0, 0, colors::emitter);
    degenerate.set(0, 1, colors::ray_marker);  // not diagonal
    CHECK_THROWS_AS(solve_reflection(degenerate, 1), DegenerateRay);
}

TEST_CASE("solve_expansion worked examples") {
    Grid dot = solve_expansion(cell_at(5, 5, 2, 2, 6), 1);
    CHECK(dot.at(2, 2) == 6);
    CHECK(dot.at(1, 2) == 6);
    CHECK(dot.at(3, 2) == 6);
    CHECK(dot.at(2, 1) == 6);
    CHECK(dot.at(2, 3) == 6);
    int cells = 0;
    for (CellValue v : dot.cells()) cells += v != 0;
    CHECK(cells == 5);  // plus-shaped 5-cell region

    // fully enclosed source never grows
    Grid boxed(3, 3, colors::obstacle);
    boxed.set(1, 1, 2);
    CHECK(equals_exact(solve_expansion(boxed, 8), boxed));

    // enough applications fill the reachable background
    Grid open = cell_at(4, 4, 0, 0, 1);
    Grid full = solve_expansion(open, 8);
    for (CellValue v : full.cells()) CHECK(v == 1);
}

TEST_CASE("solve dispatch validates inputs") {
    const TaskSpec& task = task_by_id("move.up");
    Grid ok = cell_at(5, 5, 4, 2, 2);
    CHECK(equals_exact(solve(task, 2, ok), cell_at(5, 5, 2, 2, 2)));
    CHECK(equals_exact(solve(task, 2, ok), solve(task, 2, ok)));  // determinism
    CHECK_THROWS_AS(solve(task, 0, ok), VariableOutOfRange);
    CHECK_THROWS_AS(solve(task, 5, ok), ConstraintViolated);  // would exit canvas
    Grid crowd = ok;
    crowd.set(0, 0, 3);
    CHECK_THROWS_AS(solve(task, 2, crowd), ConstraintViolated);
}
