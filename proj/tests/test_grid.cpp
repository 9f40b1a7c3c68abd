#include <doctest.h>

#include "gridbench/grid.hpp"
#include "gridbench/rng.hpp"

using namespace gridbench;

namespace {

Grid random_grid(Rng& rng, int max_dim = 8) {
    Grid g(rng.range(1, max_dim), rng.range(1, max_dim));
    for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c)
            g.set(r, c, CellValue(rng.range(0, 9)));
    return g;
}

}  // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid(0, 3), InvariantViolation);
    CHECK_THROWS_AS(Grid(1, kMaxDim + 1), InvariantViolation);
    CHECK_THROWS_AS(Grid::from_rows({{1, 12}}), InvariantViolation);
    CHECK_THROWS_AS(Grid::from_rows({{1, 2}, {3}}), ParseError);
    Grid g{{1, 0}, {0, 2}};
    CHECK(g.to_string() == "[[1,0],[0,2]]");
    CHECK(g.cells().size() == 4);
}

TEST_CASE("connected_components worked examples") {
    CHECK(connected_components(Grid(3, 3), Connectivity::four_neighbor).empty());

    auto two = connected_components(Grid{{1, 0, 1}}, Connectivity::four_neighbor, true);
    REQUIRE(two.size() == 2);
    CHECK(two[0].cells == std::vector<Coord>{{0, 0}});
    CHECK(two[1].cells == std::vector<Coord>{{0, 2}});

    auto one = connected_components(Grid{{1, 1}, {1, 0}}, Connectivity::four_neighbor);
    REQUIRE(one.size() == 1);
    CHECK(one[0].size() == 3);
    CHECK(one[0].bounding_box == BoundingBox{0, 0, 1, 1});
    CHECK(one[0].color == 1);
}

TEST_CASE("connected_components connectivity and color modes") {
    Grid g{{1, 0}, {0, 1}};
    CHECK(connected_components(g, Connectivity::four_neighbor).size() == 2);
    CHECK(connected_components(g, Connectivity::eight_neighbor).size() == 1);
    Grid mixed{{1, 2}};
    CHECK(connected_components(mixed, Connectivity::four_neighbor, true).size() == 2);
    CHECK(connected_components(mixed, Connectivity::four_neighbor, false).size() == 1);
}

TEST_CASE("translate worked examples") {
    Grid g(3, 3);
    g.set(0, 0, 2);
    const GridObject obj = connected_components(g, Connectivity::four_neighbor)[0];
    CHECK(equals_exact(translate(obj, 0, 0, g), g));

    Grid shifted = translate(obj, 0, 1, g);
    CHECK(shifted.at(0, 0) == 0);
    CHECK(shifted.at(0, 1) == 2);

    Grid edge(3, 3);
    edge.set(0, 2, 2);
    const GridObject at_edge = connected_components(edge, Connectivity::four_neighbor)[0];
    CHECK_THROWS_AS(translate(at_edge, 0, 1, edge), OutOfBounds);
}

TEST_CASE("rotate worked examples") {
    Rng rng(11);
    Grid g = random_grid(rng);
    CHECK(equals_exact(rotate(g, 0, PivotKind::grid_center), g));
    CHECK(equals_exact(rotate(Grid{{1, 0}, {0, 0}}, 2, PivotKind::grid_center),
                       Grid{{0, 0}, {0, 1}}));
    for (int i = 0; i < 50; ++i) {
        Grid h = random_grid(rng);
        CHECK(equals_exact(rotate(rotate(h, 1, PivotKind::grid_center), 1,
                                  PivotKind::grid_center),
                           rotate(h, 2, PivotKind::grid_center)));
    }
    // Non-square dims swap on odd turns.
    Grid wide{{1, 2, 3}};
    Grid turned = rotate(wide, 1, PivotKind::grid_center);
    CHECK(turned.rows() == 3);
    CHECK(turned.cols() == 1);
    CHECK(equals_exact(turned, Grid{{1}, {2}, {3}}));
}

TEST_CASE("mirror worked examples") {
    CHECK(equals_exact(mirror(Grid{{1, 2}, {0, 0}}, MirrorAxis::vertical),
                       Grid{{2, 1}, {0, 0}}));
    CHECK(equals_exact(mirror(Grid{{1, 0}, {2, 3}}, MirrorAxis::main_diagonal),
                       Grid{{1, 2}, {0, 3}}));
    CHECK(equals_exact(mirror(Grid{{1, 2}, {0, 0}}, MirrorAxis::horizontal),
                       Grid{{0, 0}, {1, 2}}));
    CHECK_THROWS_AS(mirror(Grid{{1, 2, 3}}, MirrorAxis::main_diagonal), ShapeMismatch);
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        Grid g = random_grid(rng);
        for (MirrorAxis axis : {MirrorAxis::horizontal, MirrorAxis::vertical}) {
            CHECK(equals_exact(mirror(mirror(g, axis), axis), g));
        }
    }
}

TEST_CASE("equals_exact worked examples") {
    Grid g{{1, 2}, {3, 4}};
    CHECK(equals_exact(g, g));
    CHECK_FALSE(equals_exact(Grid(2, 2), Grid(2, 3)));
    Grid h = g;
    h.set(1, 1, 5);
    CHECK_FALSE(equals_exact(g, h));
}

TEST_CASE("component repaint reproduces the grid") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        Grid g = random_grid(rng);
        Grid rebuilt(g.rows(), g.cols());
        int painted = 0;
        for (const auto& obj : connected_components(g, Connectivity::four_neighbor)) {
            for (const Coord& p : obj.cells) {
                CHECK(rebuilt.at(p.row, p.col) == 0);  // disjointness
                rebuilt.set(p.row, p.col, g.at(p.row, p.col));
                ++painted;
            }
        }
        CHECK(equals_exact(rebuilt, g));
        int nonzero = 0;
        for (CellValue v : g.cells()) nonzero += v != 0;
        CHECK(painted == nonzero);
    }
}
