// Binary morphology with a disk structuring element, hole filling, and the
// grayscale linear closings used by the hair detector.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scs/image.hpp"

namespace scs {

inline std::vector<Pixel> disk_offsets(int radius) {
    if (radius < 0) throw std::invalid_argument("disk_offsets: radius must be >= 0");
    std::vector<Pixel> offsets;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dy * dy + dx * dx <= radius * radius) offsets.push_back({dy, dx});
    return offsets;
}

namespace detail {

// erode=true: all covered pixels must be set; pixels outside the grid count
// as background. erode=false: dilation, any covered pixel set suffices.
inline BinaryMask binary_morph(const BinaryMask& mask, const std::vector<Pixel>& se, bool erode) {
    const int w = mask.width(), h = mask.height();
    BinaryMask out(w, h, false);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            bool value = erode;
            for (const Pixel& o : se) {
                const int nr = r + o.row, nc = c + o.col;
                const bool inside = nr >= 0 && nr < h && nc >= 0 && nc < w;
                const bool set = inside && mask.at(nr, nc);
                if (erode) {
                    if (!set) { value = false; break; }
                } else {
                    if (set) { value = true; break; }
                }
            }
            out.set(r, c, value);
        }
    }
    return out;
}

} // namespace detail

inline BinaryMask erode(const BinaryMask& mask, int radius) {
    return detail::binary_morph(mask, disk_offsets(radius), true);
}

inline BinaryMask dilate(const BinaryMask& mask, int radius) {
    return detail::binary_morph(mask, disk_offsets(radius), false);
}

inline BinaryMask morph_open(const BinaryMask& mask, int radius) {
    return dilate(erode(mask, radius), radius);
}

inline BinaryMask morph_close(const BinaryMask& mask, int radius) {
    return erode(dilate(mask, radius), radius);
}

// Opening followed by closing; radius 0 is the identity.
inline BinaryMask morph_smooth(const BinaryMask& mask, int radius) {
    if (radius == 0) return mask;
    return morph_close(morph_open(mask, radius), radius);
}

// Flips every background component that cannot reach the image frame through
// 4-connected background.
inline BinaryMask fill_holes(const BinaryMask& mask) {
    const int w = mask.width(), h = mask.height();
    std::vector<std::uint8_t> reached(static_cast<std::size_t>(w) * h, 0);
    std::vector<Pixel> stack;

    auto push = [&](int r, int c) {
        const std::size_t i = static_cast<std::size_t>(r) * w + c;
        if (!reached[i] && !mask.at(r, c)) {
            reached[i] = 1;
            stack.push_back({r, c});
        }
    };
    for (int c = 0; c < w; ++c) {
        push(0, c);
        push(h - 1, c);
    }
    for (int r = 0; r < h; ++r) {
        push(r, 0);
        push(r, w - 1);
    }
    while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        if (p.row > 0) push(p.row - 1, p.col);
        if (p.row + 1 < h) push(p.row + 1, p.col);
        if (p.col > 0) push(p.row, p.col - 1);
        if (p.col + 1 < w) push(p.row, p.col + 1);
    }

    BinaryMask out = mask;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (!mask.at(r, c) && !reached[static_cast<std::size_t>(r) * w + c])
                out.set(r, c, true);
    return out;
}

// --- grayscale morphology on a scalar field ----------------------------------

using GrayField = std::vector<double>; // row-major, paired with (width, height)

// Linear structuring element of roughly the given length at 0/45/90/135 deg.
inline std::vector<Pixel> line_offsets(int length, int orientation_deg) {
    const int half = std::max(1, length / 2);
    std::vector<Pixel> offsets;
    offsets.reserve(2 * half + 1);
    for (int k = -half; k <= half; ++k) {
        switch (orientation_deg) {
            case 0: offsets.push_back({0, k}); break;
            case 45: offsets.push_back({-k, k}); break;
            case 90: offsets.push_back({k, 0}); break;
            case 135: offsets.push_back({k, k}); break;
            default: throw std::invalid_argument("line_offsets: orientation must be 0/45/90/135");
        }
    }
    return offsets;
}

namespace detail {

// Out-of-grid samples are ignored (border values stand in for themselves).
inline GrayField gray_morph(const GrayField& in, int w, int h,
                            const std::vector<Pixel>& se, bool dilate_op) {
    GrayField out(in.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double v = in[static_cast<std::size_t>(r) * w + c];
            for (const Pixel& o : se) {
                const int nr = r + o.row, nc = c + o.col;
                if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                const double s = in[static_cast<std::size_t>(nr) * w + nc];
                v = dilate_op ? std::max(v, s) : std::min(v, s);
            }
            out[static_cast<std::size_t>(r) * w + c] = v;
        }
    }
    return out;
}

} // namespace detail

inline GrayField gray_close(const GrayField& in, int w, int h, const std::vector<Pixel>& se) {
    return detail::gray_morph(detail::gray_morph(in, w, h, se, true), w, h, se, false);
}

} // namespace scs
