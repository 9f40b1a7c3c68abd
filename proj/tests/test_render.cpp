#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gridbench/generator.hpp"
#include "gridbench/render.hpp"
#include "gridbench/rng.hpp"

using namespace gridbench;
namespace fs = std::filesystem;

namespace {

Episode sample_episode(int n_train = 3) {
    const TaskSpec& task = task_by_id("gravity.blocks");
    return generate_episode(task, 3, 6, derive_seed(6, task.task_id, 3, 0), 0, n_train);
}

}  // namespace

TEST_CASE("render_grid dimension arithmetic") {
    RenderStyle style;
    style.cell_px = 10;
    style.line_px = 1;
    Raster one = rasterize_grid(Grid(1, 1), style);
    CHECK(one.width == 12);
    CHECK(one.height == 12);

    // pixel dimensions are an exact affine function of grid dimensions
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const int rows = rng.range(1, kMaxDim), cols = rng.range(1, kMaxDim);
        style.cell_px = rng.range(1, 12);
        style.line_px = rng.range(0, 3);
        Raster img = rasterize_grid(Grid(rows, cols), style);
        CHECK(img.width == cols * style.cell_px + (cols + 1) * style.line_px);
        CHECK(img.height == rows * style.cell_px + (rows + 1) * style.line_px);
    }
}

TEST_CASE("render_grid determinism and png round trip") {
    Grid g{{1, 2, 3}, {4, 5, 6}};
    RenderStyle style;
    const auto a = render_grid(g, style);
    const auto b = render_grid(g, style);
    CHECK(a == b);
    CHECK(a.size() > 8);
    CHECK(a[1] == 'P');

    const Raster back = decode_png(a);
    const Raster direct = rasterize_grid(g, style);
    CHECK(back.width == direct.width);
    CHECK(back.height == direct.height);
    CHECK(back.rgb == direct.rgb);

    // background uses palette entry 0, cells their palette colors
    CHECK(direct.pixel(style.line_px + style.cell_px / 2,
                       style.line_px + style.cell_px / 2) == style.palette[1]);
}

TEST_CASE("vertical grid mirror renders as horizontal pixel mirror") {
    Grid g{{1, 2, 3}, {0, 4, 0}};
    RenderStyle style;
    const Raster a = rasterize_grid(g, style);
    const Raster b = rasterize_grid(mirror(g, MirrorAxis::vertical), style);
    REQUIRE(a.width == b.width);
    REQUIRE(a.height == b.height);
    for (int y = 0; y < a.height; ++y)
        for (int x = 0; x < a.width; ++x)
            CHECK(a.pixel(x, y) == b.pixel(a.width - 1 - x, y));
}

TEST_CASE("render_episode layouts") {
    const fs::path dir = fs::temp_directory_path() / "gridbench_render";
    fs::remove_all(dir);
    Episode ep = sample_episode();
    RenderStyle style;

    auto multi = render_episode(ep, style, dir / "multi");
    CHECK(multi.size() == 7);
    int count = 0;
    for (const auto& entry : fs::directory_iterator(dir / "multi")) {
        ++count;
        const std::string name = entry.path().filename().string();
        CHECK(name.find("test_output") == std::string::npos);
    }
    CHECK(count == 7);

    style.layout = RenderLayout::single_image;
    auto single = render_episode(ep, style, dir / "single");
    REQUIRE(single.size() == 1);
    CHECK(single[0].filename().string() == ep.episode_id() + "_single.png");
    // composite is wide enough for seven panels
    const Raster composite = decode_png([&] {
        std::ifstream in(single[0], std::ios::binary);
        return std::vector<std::uint8_t>{std::istreambuf_iterator<char>(in),
                                         std::istreambuf_iterator<char>()};
    }());
    CHECK(composite.width > 7 * style.cell_px);

    // rerun -> byte-identical files
    auto rerun = render_episode(ep, style, dir / "single");
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string{std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>()};
    };
    CHECK(slurp(single[0]) == slurp(rerun[0]));

    fs::remove_all(dir);
}

TEST_CASE("canonical layout insists on three train pairs") {
    const fs::path dir = fs::temp_directory_path() / "gridbench_render_k";
    fs::remove_all(dir);
    Episode two = sample_episode(2);
    RenderStyle style;
    CHECK_THROWS_AS(render_episode(two, style, dir), LayoutUnsupported);
    style.canonical_layout = false;
    CHECK(render_episode(two, style, dir).size() == 5);  // 2K + 1 panels
    fs::remove_all(dir);
}
