#include "gridbench/render.hpp"

#include <cstring>
#include <fstream>
#include <map>

#include <zlib.h>

#include "gridbench/errors.hpp"

namespace gridbench {

namespace fs = std::filesystem;

namespace {

void fill_rect(Raster& img, int x0, int y0, int w, int h, Rgb color) {
    for (int y = y0; y < y0 + h; ++y) {
        std::uint8_t* p = img.rgb.data() + 3 * (std::size_t(y) * img.width + x0);
        for (int x = 0; x < w; ++x) {
            *p++ = color.r;
            *p++ = color.g;
            *p++ = color.b;
        }
    }
}

Raster make_raster(int width, int height, Rgb fill) {
    Raster img;
    img.width = width;
    img.height = height;
    img.rgb.resize(std::size_t(width) * height * 3);
    fill_rect(img, 0, 0, width, height, fill);
    return img;
}

void blit(Raster& dst, const Raster& src, int x0, int y0) {
    for (int y = 0; y < src.height; ++y) {
        std::memcpy(dst.rgb.data() + 3 * (std::size_t(y0 + y) * dst.width + x0),
                    src.rgb.data() + 3 * (std::size_t(y) * src.width),
                    std::size_t(src.width) * 3);
    }
}

// 3x5 bitmap glyphs, one 3-bit row pattern per scanline, MSB = left pixel.
const std::uint8_t* glyph(char c) {
    static const std::map<char, std::array<std::uint8_t, 5>> font = {
        {'0', {7, 5, 5, 5, 7}}, {'1', {2, 6, 2, 2, 7}}, {'2', {7, 1, 7, 4, 7}},
        {'3', {7, 1, 7, 1, 7}}, {'4', {5, 5, 7, 1, 1}}, {'5', {7, 4, 7, 1, 7}},
        {'6', {7, 4, 7, 5, 7}}, {'7', {7, 1, 1, 1, 1}}, {'8', {7, 5, 7, 5, 7}},
        {'9', {7, 5, 7, 1, 7}}, {'I', {7, 2, 2, 2, 7}}, {'N', {5, 7, 7, 5, 5}},
        {'O', {7, 5, 5, 5, 7}}, {'U', {5, 5, 5, 5, 7}}, {'T', {7, 2, 2, 2, 2}},
        {'E', {7, 4, 6, 4, 7}}, {'S', {7, 4, 7, 1, 7}},
    };
    auto it = font.find(c);
    return it == font.end() ? nullptr : it->second.data();
}

void draw_text(Raster& img, int x0, int y0, int scale, const std::string& text,
               Rgb color) {
    int x = x0;
    for (char c : text) {
        if (const std::uint8_t* g = glyph(c)) {
            for (int gy = 0; gy < 5; ++gy)
                for (int gx = 0; gx < 3; ++gx)
                    if (g[gy] & (4 >> gx))
                        fill_rect(img, x + gx * scale, y0 + gy * scale, scale, scale,
                                  color);
        }
        x += 4 * scale;  // 3px glyph + 1px gap (space advances too)
    }
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
               const std::vector<std::uint8_t>& data) {
    put_u32(out, std::uint32_t(data.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    std::uint32_t crc = ::crc32(0L, out.data() + start, uInt(out.size() - start));
    put_u32(out, crc);
}

}  // namespace

Raster rasterize_grid(const Grid& grid, const RenderStyle& style) {
    if (style.cell_px < 1 || style.line_px < 0) {
        throw ConfigError("cell_px must be >= 1 and line_px >= 0");
    }
    const int cp = style.cell_px, lp = style.line_px;
    const int width = grid.cols() * cp + (grid.cols() + 1) * lp;
    const int height = grid.rows() * cp + (grid.rows() + 1) * lp;
    Raster img = make_raster(width, height, style.line_color);
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            fill_rect(img, lp + c * (cp + lp), lp + r * (cp + lp), cp, cp,
                      style.palette[grid.at(r, c)]);
        }
    }
    return img;
}

std::vector<std::uint8_t> encode_png(const Raster& raster) {
    // Raw scanlines: filter byte 0 + RGB row.
    std::vector<std::uint8_t> raw;
    raw.reserve(std::size_t(raster.height) * (1 + std::size_t(raster.width) * 3));
    for (int y = 0; y < raster.height; ++y) {
        raw.push_back(0);
        const std::uint8_t* row = raster.rgb.data() + 3 * std::size_t(y) * raster.width;
        raw.insert(raw.end(), row, row + std::size_t(raster.width) * 3);
    }

    // Zlib stream with stored (uncompressed) deflate blocks: byte-identical
    // output independent of the zlib version.
    std::vector<std::uint8_t> z{0x78, 0x01};
    std::size_t off = 0;
    do {
        const std::size_t n = std::min<std::size_t>(raw.size() - off, 65535);
        const bool last = off + n == raw.size();
        z.push_back(last ? 1 : 0);
        z.push_back(std::uint8_t(n & 0xff));
        z.push_back(std::uint8_t(n >> 8));
        z.push_back(std::uint8_t(~n & 0xff));
        z.push_back(std::uint8_t(~(n >> 8) & 0xff));
        z.insert(z.end(), raw.begin() + off, raw.begin() + off + n);
        off += n;
    } while (off < raw.size());
    put_u32(z, std::uint32_t(::adler32(1L, raw.data(), uInt(raw.size()))));

    std::vector<std::uint8_t> out{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, std::uint32_t(raster.width));
    put_u32(ihdr, std::uint32_t(raster.height));
    ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});  // 8-bit RGB, no interlace
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", z);
    put_chunk(out, "IEND", {});
    return out;
}

Raster decode_png(const std::vector<std::uint8_t>& bytes) {
    auto u32 = [&](std::size_t i) {
        return (std::uint32_t(bytes[i]) << 24) | (std::uint32_t(bytes[i + 1]) << 16) |
               (std::uint32_t(bytes[i + 2]) << 8) | std::uint32_t(bytes[i + 3]);
    };
    if (bytes.size() < 8 || bytes[1] != 'P' || bytes[2] != 'N' || bytes[3] != 'G') {
        throw ParseError("not a PNG stream");
    }
    Raster img;
    std::vector<std::uint8_t> idat;
    std::size_t i = 8;
    while (i + 8 <= bytes.size()) {
        const std::uint32_t len = u32(i);
        const std::string type(bytes.begin() + i + 4, bytes.begin() + i + 8);
        const std::size_t data = i + 8;
        if (data + len + 4 > bytes.size()) throw ParseError("truncated PNG chunk");
        if (type == "IHDR") {
            img.width = int(u32(data));
            img.height = int(u32(data + 4));
            if (bytes[data + 8] != 8 || bytes[data + 9] != 2) {
                throw ParseError("unsupported PNG format (need 8-bit RGB)");
            }
        } else if (type == "IDAT") {
            idat.insert(idat.end(), bytes.begin() + data, bytes.begin() + data + len);
        } else if (type == "IEND") {
            break;
        }
        i = data + len + 4;
    }
    if (img.width <= 0 || img.height <= 0) throw ParseError("missing PNG header");

    const std::size_t stride = 1 + std::size_t(img.width) * 3;
    std::vector<std::uint8_t> raw(std::size_t(img.height) * stride);
    uLongf out_len = uLongf(raw.size());
    if (::uncompress(raw.data(), &out_len, idat.data(), uLong(idat.size())) != Z_OK ||
        out_len != raw.size()) {
        throw ParseError("PNG inflate failed");
    }
    img.rgb.resize(std::size_t(img.width) * img.height * 3);
    for (int y = 0; y < img.height; ++y) {
        if (raw[y * stride] != 0) throw ParseError("unsupported PNG filter");
        std::memcpy(img.rgb.data() + 3 * std::size_t(y) * img.width,
                    raw.data() + y * stride + 1, std::size_t(img.width) * 3);
    }
    return img;
}

std::vector<std::uint8_t> render_grid(const Grid& grid, const RenderStyle& style) {
    return encode_png(rasterize_grid(grid, style));
}

namespace {

struct Panel {
    std::string label;  // only chars the 3x5 font covers
    std::string file_tag;
    const Grid* grid;
};

std::vector<Panel> episode_panels(const Episode& episode) {
    std::vector<Panel> panels;
    for (std::size_t k = 0; k < episode.train_pairs.size(); ++k) {
        const std::string n = std::to_string(k + 1);
        panels.push_back({"IN " + n, "train" + n + "_input", &episode.train_pairs[k].first});
        panels.push_back(
            {"OUT " + n, "train" + n + "_output", &episode.train_pairs[k].second});
    }
    panels.push_back({"TEST", "test_input", &episode.test_input});
    return panels;
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for write: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::vector<fs::path> render_episode(const Episode& episode, const RenderStyle& style,
                                     const fs::path& out_dir) {
    if (style.canonical_layout && episode.train_pairs.size() != 3) {
        throw LayoutUnsupported("canonical layout needs 3 train pairs, got " +
                                std::to_string(episode.train_pairs.size()));
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    const std::vector<Panel> panels = episode_panels(episode);
    std::vector<fs::path> written;

    if (style.layout == RenderLayout::multi_image) {
        for (const auto& panel : panels) {
            const fs::path path =
                out_dir / (episode.episode_id() + "_" + panel.file_tag + ".png");
            write_bytes(path, render_grid(*panel.grid, style));
            written.push_back(path);
        }
        return written;
    }

    // Composite: one row of labeled panels, tops aligned.
    const int margin = style.cell_px;
    const int scale = std::max(1, style.cell_px / 5);
    const int label_h = 5 * scale + scale;
    std::vector<Raster> rendered;
    std::vector<int> slot_w;  // wide enough for both the panel and its label
    int width = margin, panel_h = 0;
    for (const auto& panel : panels) {
        rendered.push_back(rasterize_grid(*panel.grid, style));
        const int label_w = int(panel.label.size()) * 4 * scale;
        slot_w.push_back(std::max(rendered.back().width, label_w));
        width += slot_w.back() + margin;
        panel_h = std::max(panel_h, rendered.back().height);
    }
    Raster img = make_raster(width, margin + label_h + panel_h + margin,
                             Rgb{0x20, 0x20, 0x20});
    int x = margin;
    for (std::size_t k = 0; k < panels.size(); ++k) {
        draw_text(img, x, margin, scale, panels[k].label, Rgb{0xff, 0xff, 0xff});
        blit(img, rendered[k], x, margin + label_h);
        x += slot_w[k] + margin;
    }
    const fs::path path = out_dir / (episode.episode_id() + "_single.png");
    write_bytes(path, encode_png(img));
    written.push_back(path);
    return written;
}

}  // namespace gridbench
