// Aspect-preserving downscale with bicubic resampling. Never upscales.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scs/image.hpp"

namespace scs {

namespace detail {

// Keys cubic convolution kernel, a = -0.5.
inline double cubic_weight(double t) {
    t = std::abs(t);
    if (t < 1.0) return 1.5 * t * t * t - 2.5 * t * t + 1.0;
    if (t < 2.0) return -0.5 * t * t * t + 2.5 * t * t - 4.0 * t + 2.0;
    return 0.0;
}

struct ResampleTap {
    int first = 0;
    std::vector<double> weights;
};

// Per-output-pixel taps along one axis. When shrinking, the kernel is
// stretched by the scale factor so neighboring input pixels are averaged in.
inline std::vector<ResampleTap> make_taps(int in_size, int out_size) {
    const double scale = static_cast<double>(in_size) / out_size; // > 1 when shrinking
    const double support = scale > 1.0 ? 2.0 * scale : 2.0;
    std::vector<ResampleTap> taps(out_size);
    for (int o = 0; o < out_size; ++o) {
        const double center = (o + 0.5) * scale - 0.5;
        const int lo = static_cast<int>(std::floor(center - support)) + 1;
        const int hi = static_cast<int>(std::floor(center + support));
        ResampleTap tap;
        tap.first = lo;
        tap.weights.reserve(hi - lo + 1);
        double sum = 0.0;
        for (int i = lo; i <= hi; ++i) {
            const double t = (i - center) / (scale > 1.0 ? scale : 1.0);
            const double w = cubic_weight(t);
            tap.weights.push_back(w);
            sum += w;
        }
        if (sum != 0.0)
            for (double& w : tap.weights) w /= sum;
        taps[o] = std::move(tap);
    }
    return taps;
}

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

} // namespace detail

// Resamples to exactly out_width x out_height (bicubic, channels clamped).
inline RgbImage resize_bicubic(const RgbImage& image, int out_width, int out_height) {
    if (out_width < 1 || out_height < 1)
        throw std::invalid_argument("resize_bicubic: output dimensions must be >= 1");
    if (out_width == image.width() && out_height == image.height()) return image;

    const int in_w = image.width(), in_h = image.height();
    const auto col_taps = detail::make_taps(in_w, out_width);
    const auto row_taps = detail::make_taps(in_h, out_height);

    // Horizontal pass into a float buffer, then vertical pass.
    std::vector<double> mid(static_cast<std::size_t>(in_h) * out_width * 3);
    for (int r = 0; r < in_h; ++r) {
        for (int c = 0; c < out_width; ++c) {
            const auto& tap = col_taps[c];
            double acc[3] = {0, 0, 0};
            for (std::size_t k = 0; k < tap.weights.size(); ++k) {
                const Rgb px = image.at(r, detail::clamp_index(tap.first + static_cast<int>(k), in_w));
                acc[0] += tap.weights[k] * px.r;
                acc[1] += tap.weights[k] * px.g;
                acc[2] += tap.weights[k] * px.b;
            }
            const std::size_t i = (static_cast<std::size_t>(r) * out_width + c) * 3;
            mid[i] = acc[0];
            mid[i + 1] = acc[1];
            mid[i + 2] = acc[2];
        }
    }

    RgbImage out(out_width, out_height);
    for (int r = 0; r < out_height; ++r) {
        const auto& tap = row_taps[r];
        for (int c = 0; c < out_width; ++c) {
            double acc[3] = {0, 0, 0};
            for (std::size_t k = 0; k < tap.weights.size(); ++k) {
                const int rr = detail::clamp_index(tap.first + static_cast<int>(k), in_h);
                const std::size_t i = (static_cast<std::size_t>(rr) * out_width + c) * 3;
                acc[0] += tap.weights[k] * mid[i];
                acc[1] += tap.weights[k] * mid[i + 1];
                acc[2] += tap.weights[k] * mid[i + 2];
            }
            auto to_byte = [](double v) {
                return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
            };
            out.set(r, c, {to_byte(acc[0]), to_byte(acc[1]), to_byte(acc[2])});
        }
    }
    return out;
}

// Shrinks so the larger dimension equals max_dim; smaller inputs pass through.
inline RgbImage resize_max_dim(const RgbImage& image, int max_dim) {
    if (max_dim < 16) throw std::invalid_argument("resize_max_dim: max_dim must be >= 16");
    const int w = image.width(), h = image.height();
    const int larger = std::max(w, h);
    if (larger <= max_dim) return image;
    const double factor = static_cast<double>(max_dim) / larger;
    int out_w, out_h;
    if (w >= h) {
        out_w = max_dim;
        out_h = std::max(1, static_cast<int>(std::lround(h * factor)));
    } else {
        out_h = max_dim;
        out_w = std::max(1, static_cast<int>(std::lround(w * factor)));
    }
    return resize_bicubic(image, out_w, out_h);
}

} // namespace scs
