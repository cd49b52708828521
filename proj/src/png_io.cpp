// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/png_io.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include <png.h>

#include "lumi/error.hpp"

namespace lumi {

namespace {

constexpr png_uint_32 kMaxImageSide = 16384;

// libpng's default handlers print to stderr before the longjmp; these keep
// malformed inputs quiet and leave reporting to the exceptions we throw.
extern "C" void silent_png_error(png_structp png, png_const_charp) {
    png_longjmp(png, 1);
}
extern "C" void silent_png_warning(png_structp, png_const_charp) {}

struct ReadGuard {
    FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;

    ~ReadGuard() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

struct WriteGuard {
    FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;

    ~WriteGuard() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

}  // namespace

Image read_png(const std::filesystem::path& path) {
    ReadGuard g;
    g.fp = std::fopen(path.string().c_str(), "rb");
    if (!g.fp) throw IoError("cannot open " + path.string());

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, g.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw ParseError(path.string() + " is not a png");

    g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, silent_png_error,
                                   silent_png_warning);
    if (!g.png) throw IoError("png reader allocation failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw IoError("png info allocation failed");

    // Declared before setjmp; only resized afterwards, so a longjmp landing
    // here can throw and still run their destructors.
    std::vector<png_byte> pixels;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(g.png))) throw ParseError("malformed png data in " + path.string());

    png_set_user_limits(g.png, kMaxImageSide, kMaxImageSide);
    png_init_io(g.png, g.fp);
    png_set_sig_bytes(g.png, 8);
    png_read_info(g.png, g.info);

    const png_uint_32 width = png_get_image_width(g.png, g.info);
    const png_uint_32 height = png_get_image_height(g.png, g.info);
    const int color_type = png_get_color_type(g.png, g.info);
    int bit_depth = png_get_bit_depth(g.png, g.info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(g.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(g.png);
    if (png_get_valid(g.png, g.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(g.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(g.png);
    png_set_strip_alpha(g.png);
    png_set_interlace_handling(g.png);
    png_read_update_info(g.png, g.info);

    bit_depth = png_get_bit_depth(g.png, g.info);
    const png_size_t rowbytes = png_get_rowbytes(g.png, g.info);
    pixels.resize(rowbytes * height);
    rows.resize(height);
    for (png_uint_32 v = 0; v < height; ++v) rows[v] = pixels.data() + v * rowbytes;
    png_read_image(g.png, rows.data());
    png_read_end(g.png, nullptr);

    Image img(static_cast<int>(width), static_cast<int>(height), 3);
    if (bit_depth == 16) {
        for (png_uint_32 v = 0; v < height; ++v) {
            const png_bytep row = rows[v];
            for (png_uint_32 u = 0; u < width; ++u)
                for (int c = 0; c < 3; ++c) {
                    const unsigned hi = row[(u * 3 + c) * 2];
                    const unsigned lo = row[(u * 3 + c) * 2 + 1];
                    img.at(static_cast<int>(u), static_cast<int>(v), c) =
                        static_cast<double>((hi << 8) | lo) / 65535.0;
                }
        }
    } else {
        for (png_uint_32 v = 0; v < height; ++v) {
            const png_bytep row = rows[v];
            for (png_uint_32 u = 0; u < width; ++u)
                for (int c = 0; c < 3; ++c)
                    img.at(static_cast<int>(u), static_cast<int>(v), c) =
                        static_cast<double>(row[u * 3 + c]) / 255.0;
        }
    }
    return img;
}

void write_png(const std::filesystem::path& path, const Image& img) {
    if (img.channels != 3)
        throw DimensionMismatch("png export expects 3 channels, got " +
                                std::to_string(img.channels));
    if (img.width <= 0 || img.height <= 0) throw DimensionMismatch("png export of empty image");

    WriteGuard g;
    g.fp = std::fopen(path.string().c_str(), "wb");
    if (!g.fp) throw IoError("cannot open " + path.string() + " for writing");
    g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, silent_png_error,
                                    silent_png_warning);
    if (!g.png) throw IoError("png writer allocation failed");
    g.info = png_create_info_struct(g.png);
    if (!g.info) throw IoError("png info allocation failed");

    std::vector<png_byte> pixels;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(g.png))) throw IoError("png write failed for " + path.string());

    png_init_io(g.png, g.fp);
    png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

    pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    rows.resize(img.height);
    for (int v = 0; v < img.height; ++v) {
        rows[v] = pixels.data() + static_cast<std::size_t>(v) * img.width * 3;
        for (int u = 0; u < img.width; ++u)
            for (int c = 0; c < 3; ++c) {
                double x = img.at(u, v, c);
                x = x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
                rows[v][u * 3 + c] = static_cast<png_byte>(std::floor(x * 255.0 + 0.5));
            }
    }
    png_set_rows(g.png, g.info, rows.data());
    png_write_png(g.png, g.info, PNG_TRANSFORM_IDENTITY, nullptr);
}

}  // namespace lumi
