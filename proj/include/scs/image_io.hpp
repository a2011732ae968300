// Image codecs: PNG and JPEG through libpng/libjpeg, BMP decoded directly.
// Writing is PNG only (grayscale 0/255 masks and RGB), with fixed encoder
// settings so identical pixels give identical bytes.

#pragma once

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "scs/color.hpp"
#include "scs/image.hpp"

namespace scs {

struct ImageIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.string().c_str(), mode));
    if (!f) throw ImageIoError("cannot open " + path.string());
    return f;
}

// --- PNG ---------------------------------------------------------------------

inline RgbImage load_png(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw ImageIoError("png: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw ImageIoError("png: out of memory");
    }
    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ImageIoError("png: failed to decode " + path.string());
    }
    png_init_io(png, f.get());
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);

    // Normalize everything to 8-bit RGB.
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_set_palette_to_rgb(png);
    png_read_update_info(png, info);

    pixels.resize(static_cast<std::size_t>(w) * h * 3);
    rows.resize(h);
    for (png_uint_32 r = 0; r < h; ++r)
        rows[r] = pixels.data() + static_cast<std::size_t>(r) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return RgbImage(static_cast<int>(w), static_cast<int>(h), std::move(pixels));
}

inline void save_png(const std::filesystem::path& path, int width, int height,
                     const std::uint8_t* data, bool gray) {
    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw ImageIoError("png: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw ImageIoError("png: out of memory");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw ImageIoError("png: failed to encode " + path.string());
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, width, height, 8,
                 gray ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 6);
    png_write_info(png, info);
    const int stride = gray ? width : width * 3;
    for (int r = 0; r < height; ++r)
        png_write_row(png, const_cast<png_bytep>(data + static_cast<std::size_t>(r) * stride));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

// --- JPEG --------------------------------------------------------------------

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

inline void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(err->jump, 1);
}

inline RgbImage load_jpeg(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    jpeg_decompress_struct cinfo{};
    JpegErrorMgr jerr{};
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw ImageIoError("jpeg: failed to decode " + path.string());
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f.get());
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    const int w = static_cast<int>(cinfo.output_width);
    const int h = static_cast<int>(cinfo.output_height);
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        std::uint8_t* row = pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return RgbImage(w, h, std::move(pixels));
}

// --- BMP (uncompressed 1/8/24/32-bit) -----------------------------------------

inline RgbImage load_bmp(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    auto read_bytes = [&](std::size_t n) {
        std::vector<std::uint8_t> buf(n);
        if (std::fread(buf.data(), 1, n, f.get()) != n)
            throw ImageIoError("bmp: truncated file " + path.string());
        return buf;
    };
    auto u16 = [](const std::uint8_t* p) { return static_cast<std::uint32_t>(p[0]) | (p[1] << 8); };
    auto u32 = [](const std::uint8_t* p) {
        return static_cast<std::uint32_t>(p[0]) | (p[1] << 8) | (p[2] << 16) |
               (static_cast<std::uint32_t>(p[3]) << 24);
    };

    const auto header = read_bytes(14);
    if (header[0] != 'B' || header[1] != 'M')
        throw ImageIoError("bmp: bad signature in " + path.string());
    const std::uint32_t data_offset = u32(&header[10]);

    const auto dib_size_buf = read_bytes(4);
    const std::uint32_t dib_size = u32(dib_size_buf.data());
    if (dib_size < 40) throw ImageIoError("bmp: unsupported header in " + path.string());
    const auto dib = read_bytes(dib_size - 4);

    const std::int32_t w = static_cast<std::int32_t>(u32(&dib[0]));
    std::int32_t h = static_cast<std::int32_t>(u32(&dib[4]));
    const bool top_down = h < 0;
    if (top_down) h = -h;
    const std::uint32_t bpp = u16(&dib[10]);
    const std::uint32_t compression = u32(&dib[12]);
    if (w < 1 || h < 1) throw ImageIoError("bmp: bad dimensions in " + path.string());
    if (compression != 0 && !(compression == 3 && bpp == 32))
        throw ImageIoError("bmp: compressed files not supported: " + path.string());
    if (bpp != 1 && bpp != 8 && bpp != 24 && bpp != 32)
        throw ImageIoError("bmp: unsupported bit depth in " + path.string());

    std::uint32_t palette_count = u32(&dib[28]);
    std::vector<Rgb> palette;
    if (bpp <= 8) {
        if (palette_count == 0) palette_count = 1u << bpp;
        std::fseek(f.get(), 14 + static_cast<long>(dib_size), SEEK_SET);
        const auto pal = read_bytes(static_cast<std::size_t>(palette_count) * 4);
        palette.resize(palette_count);
        for (std::uint32_t i = 0; i < palette_count; ++i)
            palette[i] = {pal[i * 4 + 2], pal[i * 4 + 1], pal[i * 4 + 0]};
    }

    std::fseek(f.get(), static_cast<long>(data_offset), SEEK_SET);
    const std::size_t row_bytes = ((static_cast<std::size_t>(w) * bpp + 31) / 32) * 4;
    const auto raster = read_bytes(row_bytes * h);

    RgbImage out(w, h);
    for (std::int32_t r = 0; r < h; ++r) {
        const std::uint8_t* row = raster.data() + row_bytes * (top_down ? r : h - 1 - r);
        for (std::int32_t c = 0; c < w; ++c) {
            Rgb px;
            if (bpp == 24 || bpp == 32) {
                const std::uint8_t* p = row + static_cast<std::size_t>(c) * (bpp / 8);
                px = {p[2], p[1], p[0]};
            } else if (bpp == 8) {
                px = palette[std::min<std::uint32_t>(row[c], palette_count - 1)];
            } else { // 1-bit
                const int bit = (row[c / 8] >> (7 - (c % 8))) & 1;
                px = palette[std::min<std::uint32_t>(bit, palette_count - 1)];
            }
            out.set(r, c, px);
        }
    }
    return out;
}

} // namespace detail

// Decodes PNG/JPEG/BMP by magic bytes (with extension as a fallback hint).
inline RgbImage load_image(const std::filesystem::path& path) {
    {
        detail::FilePtr f = detail::open_file(path, "rb");
        std::uint8_t magic[4] = {0, 0, 0, 0};
        const std::size_t got = std::fread(magic, 1, sizeof magic, f.get());
        if (got >= 4 && magic[0] == 0x89 && magic[1] == 'P') return detail::load_png(path);
        if (got >= 2 && magic[0] == 0xff && magic[1] == 0xd8) return detail::load_jpeg(path);
        if (got >= 2 && magic[0] == 'B' && magic[1] == 'M') return detail::load_bmp(path);
    }
    throw ImageIoError("unrecognized image format: " + path.string());
}

inline void save_png_rgb(const std::filesystem::path& path, const RgbImage& image) {
    detail::save_png(path, image.width(), image.height(), image.data().data(), false);
}

// 8-bit grayscale, foreground 255 / background 0.
inline void save_png_mask(const std::filesystem::path& path, const BinaryMask& mask) {
    std::vector<std::uint8_t> gray(mask.pixel_count());
    for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = mask.bits()[i] ? 255 : 0;
    detail::save_png(path, mask.width(), mask.height(), gray.data(), true);
}

// Foreground iff gray value (luma for RGB) exceeds 128.
inline BinaryMask load_mask(const std::filesystem::path& path) {
    const RgbImage img = load_image(path);
    BinaryMask mask(img.width(), img.height(), false);
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            mask.set(r, c, luma(img.at(r, c)) > 128.0);
    return mask;
}

} // namespace scs
