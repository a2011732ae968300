// Raster value types shared by every pipeline stage.

#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scs {

struct Pixel {
    int row = 0;
    int col = 0;
    friend bool operator==(const Pixel&, const Pixel&) = default;
    friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Real-valued color, used for region averages and distances.
using RgbF = std::array<double, 3>;

inline RgbF to_rgbf(Rgb c) {
    return {static_cast<double>(c.r), static_cast<double>(c.g), static_cast<double>(c.b)};
}

// 8-bit three-channel raster, row-major interleaved RGB.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height, Rgb fill = {0, 0, 0})
        : width_(width), height_(height) {
        check_dims(width, height);
        data_.resize(static_cast<std::size_t>(width) * height * 3);
        for (int i = 0; i < width * height; ++i) {
            data_[3 * i + 0] = fill.r;
            data_[3 * i + 1] = fill.g;
            data_[3 * i + 2] = fill.b;
        }
    }
    RgbImage(int width, int height, std::vector<std::uint8_t> data)
        : width_(width), height_(height), data_(std::move(data)) {
        check_dims(width, height);
        if (data_.size() != static_cast<std::size_t>(width) * height * 3)
            throw std::invalid_argument("RgbImage: data length must be width*height*3");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

    Rgb at(int row, int col) const {
        const std::size_t i = index(row, col);
        return {data_[i], data_[i + 1], data_[i + 2]};
    }
    void set(int row, int col, Rgb c) {
        const std::size_t i = index(row, col);
        data_[i] = c.r;
        data_[i + 1] = c.g;
        data_[i + 2] = c.b;
    }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    static void check_dims(int w, int h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("RgbImage: width and height must be >= 1");
    }
    std::size_t index(int row, int col) const {
        return (static_cast<std::size_t>(row) * width_ + col) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

// Per-pixel scalar field on [0, 255], same grid as the image it came from.
class SaliencyMap {
public:
    SaliencyMap() = default;
    SaliencyMap(int width, int height, float fill = 0.0f)
        : width_(width), height_(height),
          values_(static_cast<std::size_t>(check(width, height)) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return values_.size(); }

    float at(int row, int col) const { return values_[idx(row, col)]; }
    void set(int row, int col, float v) { values_[idx(row, col)] = v; }

    const std::vector<float>& values() const { return values_; }
    std::vector<float>& values() { return values_; }

private:
    static int check(int w, int h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("SaliencyMap: width and height must be >= 1");
        return w;
    }
    std::size_t idx(int row, int col) const {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<float> values_;
};

// Boolean foreground/background field over the same grid.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool fill = false)
        : width_(width), height_(height),
          bits_(static_cast<std::size_t>(check(width, height)) * height, fill ? 1 : 0) {}

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return bits_.size(); }

    bool at(int row, int col) const { return bits_[idx(row, col)] != 0; }
    void set(int row, int col, bool v) { bits_[idx(row, col)] = v ? 1 : 0; }

    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (auto b : bits_) n += b;
        return n;
    }
    bool empty_foreground() const { return foreground_count() == 0; }

    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::vector<std::uint8_t>& bits() { return bits_; }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    static int check(int w, int h) {
        if (w < 1 || h < 1)
            throw std::invalid_argument("BinaryMask: width and height must be >= 1");
        return w;
    }
    std::size_t idx(int row, int col) const {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

inline void require_same_grid(int wa, int ha, int wb, int hb, const char* what) {
    if (wa != wb || ha != hb)
        throw std::invalid_argument(std::string(what) + ": grid dimensions do not match");
}

} // namespace scs
