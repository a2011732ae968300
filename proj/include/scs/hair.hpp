// Hair detection by grayscale linear closings and inpainting across the
// stroke. Dark thin structures raise the closing response; thick blobs do not.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "scs/color.hpp"
#include "scs/image.hpp"
#include "scs/morphology.hpp"
#include "scs/params.hpp"
#include "scs/region.hpp"

namespace scs {

struct HairMask {
    BinaryMask mask;
};

struct HairParams {
    int length = 25;          // structuring-element length in pixels
    double threshold = 25.0;  // closing response that marks a pixel as hair
    int min_area = 30;        // smaller components are discarded as noise
};

inline HairParams hair_params_for(const ScsParams& params, int width, int height) {
    const int minsize = std::min(width, height);
    HairParams hp;
    hp.length = std::max(3, static_cast<int>(std::lround(params.hair_length_frac * minsize)));
    hp.threshold = params.hair_response_threshold;
    hp.min_area = params.hair_min_area;
    return hp;
}

// Marks pixels whose grayscale closing (length-L lines at 0/45/90/135 deg)
// exceeds the original gray value by more than the threshold, then drops
// components smaller than min_area.
inline HairMask detect_hair(const RgbImage& image, const HairParams& hp = {}) {
    const int w = image.width(), h = image.height();
    GrayField gray(static_cast<std::size_t>(w) * h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            gray[static_cast<std::size_t>(r) * w + c] = luma(image.at(r, c));

    BinaryMask hair(w, h, false);
    for (int deg : {0, 45, 90, 135}) {
        const GrayField closed = gray_close(gray, w, h, line_offsets(hp.length, deg));
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const std::size_t i = static_cast<std::size_t>(r) * w + c;
                if (closed[i] - gray[i] > hp.threshold) hair.set(r, c, true);
            }
        }
    }

    if (hp.min_area > 0 && !hair.empty_foreground()) {
        BinaryMask cleaned(w, h, false);
        for (const PixelRegion& region : label_components(hair, 8, Polarity::Foreground)) {
            if (region.area < static_cast<std::size_t>(hp.min_area)) continue;
            for (const Pixel& p : region.pixels) cleaned.set(p.row, p.col, true);
        }
        hair = std::move(cleaned);
    }
    return {std::move(hair)};
}

namespace detail {

// Walks from (r, c) along +/-(dr, dc) to the nearest non-hair pixels.
struct GapEndpoints {
    bool ok = false;
    Pixel a{}, b{};
    int dist_a = 0, dist_b = 0;
};

inline GapEndpoints probe_direction(const BinaryMask& hair, int r, int c, int dr, int dc) {
    const int w = hair.width(), h = hair.height();
    GapEndpoints g;
    int ra = r, ca = c, da = 0;
    while (true) {
        ra -= dr;
        ca -= dc;
        ++da;
        if (ra < 0 || ra >= h || ca < 0 || ca >= w) return g;
        if (!hair.at(ra, ca)) break;
    }
    int rb = r, cb = c, db = 0;
    while (true) {
        rb += dr;
        cb += dc;
        ++db;
        if (rb < 0 || rb >= h || cb < 0 || cb >= w) return g;
        if (!hair.at(rb, cb)) break;
    }
    g.ok = true;
    g.a = {ra, ca};
    g.b = {rb, cb};
    g.dist_a = da;
    g.dist_b = db;
    return g;
}

} // namespace detail

// Replaces hair pixels by interpolating the two nearest non-hair pixels
// along the direction that crosses the stroke in the fewest steps (the
// perpendicular of the local stroke orientation).
inline RgbImage remove_hair(const RgbImage& image, const HairMask& hair) {
    require_same_grid(image.width(), image.height(), hair.mask.width(), hair.mask.height(),
                      "remove_hair");
    if (hair.mask.empty_foreground()) return image;

    static constexpr int dirs[4][2] = {{0, 1}, {1, 1}, {1, 0}, {1, -1}};
    const int w = image.width(), h = image.height();
    RgbImage out = image;

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!hair.mask.at(r, c)) continue;

            detail::GapEndpoints best;
            int best_gap = std::numeric_limits<int>::max();
            for (const auto& d : dirs) {
                const auto g = detail::probe_direction(hair.mask, r, c, d[0], d[1]);
                if (g.ok && g.dist_a + g.dist_b < best_gap) {
                    best_gap = g.dist_a + g.dist_b;
                    best = g;
                }
            }
            if (!best.ok) {
                // Stroke runs off the frame in every direction; take any
                // one-sided neighbor if present.
                for (const auto& d : dirs) {
                    for (int sign : {-1, 1}) {
                        int rr = r, cc = c;
                        while (rr >= 0 && rr < h && cc >= 0 && cc < w && hair.mask.at(rr, cc)) {
                            rr += sign * d[0];
                            cc += sign * d[1];
                        }
                        if (rr >= 0 && rr < h && cc >= 0 && cc < w) {
                            out.set(r, c, image.at(rr, cc));
                            goto next_pixel;
                        }
                    }
                }
                goto next_pixel;
            }
            {
                const Rgb ca = image.at(best.a.row, best.a.col);
                const Rgb cb = image.at(best.b.row, best.b.col);
                const double t = static_cast<double>(best.dist_a) / (best.dist_a + best.dist_b);
                auto lerp = [t](std::uint8_t a, std::uint8_t b) {
                    return static_cast<std::uint8_t>(
                        std::clamp(std::lround(a + t * (b - a)), 0L, 255L));
                };
                out.set(r, c, {lerp(ca.r, cb.r), lerp(ca.g, cb.g), lerp(ca.b, cb.b)});
            }
        next_pixel:;
        }
    }
    return out;
}

} // namespace scs
