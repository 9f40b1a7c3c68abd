#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gridbench/generator.hpp"
#include "gridbench/grid.hpp"

namespace gridbench {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

enum class RenderLayout { single_image, multi_image };

// Pure function of (grid, style): no anti-aliasing, fixed palette, so
// renders are byte-stable goldens.
struct RenderStyle {
    int cell_px = 10;
    int line_px = 1;
    // ARC community palette: 0 #000000 1 #0074D9 2 #FF4136 3 #2ECC40
    // 4 #FFDC00 5 #AAAAAA 6 #F012BE 7 #FF851B 8 #7FDBFF 9 #870C25
    std::array<Rgb, 10> palette = {{{0x00, 0x00, 0x00},
                                    {0x00, 0x74, 0xD9},
                                    {0xFF, 0x41, 0x36},
                                    {0x2E, 0xCC, 0x40},
                                    {0xFF, 0xDC, 0x00},
                                    {0xAA, 0xAA, 0xAA},
                                    {0xF0, 0x12, 0xBE},
                                    {0xFF, 0x85, 0x1B},
                                    {0x7F, 0xDB, 0xFF},
                                    {0x87, 0x0C, 0x25}}};
    Rgb line_color{0x55, 0x55, 0x55};
    RenderLayout layout = RenderLayout::multi_image;
    // When true, render_episode insists on the canonical 3-train-pair
    // (7-panel) shape and throws LayoutUnsupported otherwise; when false
    // it adapts to any K with the same scheme.
    bool canonical_layout = true;
};

// Raw 8-bit RGB raster; intermediate representation for tests that want
// to assert on pixels without decoding PNG.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major

    Rgb pixel(int x, int y) const {
        const std::size_t i = 3 * (std::size_t(y) * width + x);
        return {rgb[i], rgb[i + 1], rgb[i + 2]};
    }
};

Raster rasterize_grid(const Grid& grid, const RenderStyle& style);

// Deterministic PNG bytes (stored deflate blocks, so output does not
// depend on the zlib version). Dimensions: cols*cell_px + (cols+1)*line_px
// by the row analogue.
std::vector<std::uint8_t> render_grid(const Grid& grid, const RenderStyle& style);

std::vector<std::uint8_t> encode_png(const Raster& raster);
Raster decode_png(const std::vector<std::uint8_t>& bytes);

// Writes `{episode_id}_{panel}.png` files (panels: train1_input,
// train1_output, ..., test_input) for multi_image, or one
// `{episode_id}_single.png` composite with labeled panels for
// single_image. Never renders the test output. Returns the paths written.
std::vector<std::filesystem::path> render_episode(const Episode& episode,
                                                  const RenderStyle& style,
                                                  const std::filesystem::path& out_dir);

}  // namespace gridbench
