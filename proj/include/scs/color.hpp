// Color arithmetic: RGB distances, luma, darkest color, sRGB -> CIELAB.

#pragma once

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "scs/image.hpp"

namespace scs {

// Euclidean distance in 8-bit RGB space; range [0, 255*sqrt(3)].
inline double color_distance(const RgbF& a, const RgbF& b) {
    const double dr = a[0] - b[0];
    const double dg = a[1] - b[1];
    const double db = a[2] - b[2];
    return std::sqrt(dr * dr + dg * dg + db * db);
}

inline double color_distance(Rgb a, Rgb b) {
    return color_distance(to_rgbf(a), to_rgbf(b));
}

inline double luma(Rgb c) {
    return 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
}

// Darkest color present at foreground pixels: minimum luma over distinct
// colors, ties broken by lexicographic (R, G, B) order.
inline Rgb darkest_color(const RgbImage& image, const BinaryMask& mask) {
    require_same_grid(image.width(), image.height(), mask.width(), mask.height(), "darkest_color");
    bool found = false;
    Rgb best{};
    double best_luma = 0.0;
    for (int r = 0; r < image.height(); ++r) {
        for (int c = 0; c < image.width(); ++c) {
            if (!mask.at(r, c)) continue;
            const Rgb col = image.at(r, c);
            const double l = luma(col);
            if (!found || l < best_luma ||
                (l == best_luma && std::tie(col.r, col.g, col.b) < std::tie(best.r, best.g, best.b))) {
                best = col;
                best_luma = l;
                found = true;
            }
        }
    }
    if (!found) throw std::invalid_argument("darkest_color: mask has no foreground pixels");
    return best;
}

// --- sRGB -> CIELAB (D65 white point) ---------------------------------------

struct Lab {
    double l = 0, a = 0, b = 0;
};

inline double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline Lab rgb_to_lab(Rgb c) {
    const double rl = srgb_to_linear(c.r / 255.0);
    const double gl = srgb_to_linear(c.g / 255.0);
    const double bl = srgb_to_linear(c.b / 255.0);

    // sRGB D65 primaries.
    const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;

    const double xn = 0.95047, yn = 1.0, zn = 1.08883;
    auto f = [](double t) {
        const double eps = 216.0 / 24389.0; // (6/29)^3
        return t > eps ? std::cbrt(t) : t * (841.0 / 108.0) + 4.0 / 29.0;
    };
    const double fx = f(x / xn), fy = f(y / yn), fz = f(z / zn);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

} // namespace scs
