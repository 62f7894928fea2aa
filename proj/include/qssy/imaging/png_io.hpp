#pragma once

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <png.h>

#include "qssy/errors.hpp"
#include "qssy/imaging/image.hpp"

namespace qssy {

// rgb_pure drops any alpha channel and leaves the real plane zero; rgba_full
// keeps alpha in the real plane when the file has one.
enum class PngMode { rgb_pure, rgba_full };

namespace detail {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Raw decoded samples, 8 or 16 bits, 3 or 4 channels, rows top to bottom.
struct PngRaster {
    std::uint32_t width = 0, height = 0;
    int bit_depth = 8, channels = 3;
    std::vector<unsigned char> data;
    std::vector<unsigned char*> rows;
    std::string error;
};

// libpng reports errors through longjmp, so every object with a destructor
// that changes after setjmp lives in r.
inline bool png_decode(std::FILE* f, PngRaster& r) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) return r.error = "out of memory", false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        return r.error = "out of memory", false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        if (r.error.empty()) r.error = "corrupt PNG data";
        return false;
    }
    png_init_io(png, f);
    png_read_info(png, info);
    const int color = png_get_color_type(png, info);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
        r.error = "unsupported color type (grayscale)";
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    r.width = png_get_image_width(png, info);
    r.height = png_get_image_height(png, info);
    r.bit_depth = png_get_bit_depth(png, info);
    r.channels = png_get_channels(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    r.data.resize(stride * r.height);
    r.rows.resize(r.height);
    for (std::uint32_t y = 0; y < r.height; ++y) r.rows[y] = r.data.data() + y * stride;
    png_read_image(png, r.rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

inline bool png_encode(std::FILE* f, PngRaster& r) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) return r.error = "out of memory", false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        return r.error = "out of memory", false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return r.error = "PNG write failed", false;
    }
    png_init_io(png, f);
    png_set_IHDR(png, info, r.width, r.height, r.bit_depth, r.channels == 4 ? PNG_COLOR_TYPE_RGBA : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t stride = std::size_t(r.width) * r.channels * (r.bit_depth / 8);
    r.rows.resize(r.height);
    for (std::uint32_t y = 0; y < r.height; ++y) r.rows[y] = r.data.data() + y * stride;
    png_write_image(png, r.rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

} // namespace detail

inline QuatImage load_png(const std::string& path, PngMode mode = PngMode::rgb_pure) {
    detail::FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw io_error("cannot open '" + path + "'");
    unsigned char sig[8] = {};
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) throw io_error("'" + path + "' is not a PNG file");
    std::rewind(f.get());

    detail::PngRaster r;
    if (!detail::png_decode(f.get(), r)) throw io_error("'" + path + "': " + r.error);

    const bool alpha = r.channels == 4 && mode == PngMode::rgba_full;
    QuatImage img(r.height, r.width, alpha);
    const double peak = r.bit_depth == 16 ? 65535.0 : 255.0;
    const std::size_t bps = r.bit_depth == 16 ? 2 : 1;
    const std::size_t stride = std::size_t(r.width) * r.channels * bps;
    auto sample = [&](std::size_t y, std::size_t x, int ch) {
        const unsigned char* p = r.data.data() + y * stride + (x * r.channels + ch) * bps;
        return bps == 2 ? double((unsigned(p[0]) << 8) | p[1]) : double(p[0]);
    };
    for (std::size_t y = 0; y < r.height; ++y)
        for (std::size_t x = 0; x < r.width; ++x) {
            for (int ch = 0; ch < 3; ++ch) img.planes[ch + 1](Eigen::Index(y), Eigen::Index(x)) = sample(y, x, ch) / peak;
            if (alpha) img.planes[0](Eigen::Index(y), Eigen::Index(x)) = sample(y, x, 3) / peak;
        }
    return img;
}

// Writes RGB, or RGBA when the image has alpha. Values are clamped to [0, 1].
inline void save_png(const QuatImage& img, const std::string& path, int bit_depth = 8) {
    if (bit_depth != 8 && bit_depth != 16) throw std::invalid_argument("save_png: bit depth must be 8 or 16");
    if (img.height == 0 || img.width == 0) throw dimension_error("save_png: empty image");
    detail::PngRaster r;
    r.width = std::uint32_t(img.width);
    r.height = std::uint32_t(img.height);
    r.bit_depth = bit_depth;
    r.channels = img.has_alpha ? 4 : 3;
    const std::size_t bps = bit_depth == 16 ? 2 : 1;
    const double peak = bit_depth == 16 ? 65535.0 : 255.0;
    r.data.resize(std::size_t(r.width) * r.height * r.channels * bps);
    std::size_t k = 0;
    for (std::size_t y = 0; y < img.height; ++y)
        for (std::size_t x = 0; x < img.width; ++x)
            for (int ch = 0; ch < r.channels; ++ch) {
                const int plane = ch < 3 ? ch + 1 : 0;
                const double v = std::clamp(img.planes[plane](Eigen::Index(y), Eigen::Index(x)), 0.0, 1.0);
                const unsigned q = unsigned(std::lround(v * peak));
                if (bps == 2) r.data[k++] = static_cast<unsigned char>(q >> 8);
                r.data[k++] = static_cast<unsigned char>(q & 0xff);
            }

    detail::FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw io_error("cannot create '" + path + "'");
    if (!detail::png_encode(f.get(), r)) throw io_error("'" + path + "': " + r.error);
}

} // namespace qssy
