// Synthetic dermoscopy-like test images. The generating ellipse doubles as
// exact ground truth, which makes phantoms an oracle for the full pipeline.
// All randomness goes through a pinned generator so a given seed produces
// identical phantoms on any platform.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "scs/image.hpp"

namespace scs {

struct PhantomSpec {
    int width = 600;
    int height = 600;
    Rgb skin{210, 180, 160};
    Rgb lesion{80, 50, 45};
    double center_row = 300, center_col = 300;
    double semi_axis_a = 150, semi_axis_b = 100; // along the rotated axes
    double rotation_rad = 0.0;
    int noise_amplitude = 4;   // uniform per-channel pixel noise
    int hair_strokes = 0;      // dark thin polylines
    bool vignette = false;     // dark corner falloff
    int bubbles = 0;           // small bright circles
    std::uint32_t seed = 1;
};

struct Phantom {
    RgbImage image;
    BinaryMask ground_truth;
};

namespace detail {

// Same pinned xorshift as the quantizer; phantoms must not depend on
// libstdc++ distribution internals.
struct PhantomRng {
    std::uint32_t state;
    explicit PhantomRng(std::uint32_t seed) : state(seed ? seed : 0x2545f491u) {}
    std::uint32_t next() {
        std::uint32_t x = state;
        x ^= x << 13;
        x ^= x >> 17;
        x ^= x << 5;
        return state = x;
    }
    double uniform() { return next() * (1.0 / 4294967296.0); } // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(next() % static_cast<std::uint32_t>(hi - lo + 1));
    }
};

inline double ellipse_value(const PhantomSpec& spec, double r, double c) {
    const double dy = r - spec.center_row;
    const double dx = c - spec.center_col;
    const double ca = std::cos(spec.rotation_rad), sa = std::sin(spec.rotation_rad);
    const double u = dx * ca + dy * sa;
    const double v = -dx * sa + dy * ca;
    const double na = u / spec.semi_axis_a;
    const double nb = v / spec.semi_axis_b;
    return na * na + nb * nb; // <= 1 inside
}

inline Rgb mix(Rgb a, Rgb b, double t) {
    auto lerp = [t](std::uint8_t x, std::uint8_t y) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(x + t * (y - x)), 0L, 255L));
    };
    return {lerp(a.r, b.r), lerp(a.g, b.g), lerp(a.b, b.b)};
}

inline void draw_thick_line(RgbImage& img, double r0, double c0, double r1, double c1,
                            double thickness, Rgb color) {
    const double len = std::hypot(r1 - r0, c1 - c0);
    const int steps = std::max(2, static_cast<int>(len * 2));
    const int rad = std::max(0, static_cast<int>(thickness / 2));
    for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        const int rr = static_cast<int>(std::lround(r0 + t * (r1 - r0)));
        const int cc = static_cast<int>(std::lround(c0 + t * (c1 - c0)));
        for (int dr = -rad; dr <= rad; ++dr)
            for (int dc = -rad; dc <= rad; ++dc) {
                const int pr = rr + dr, pc = cc + dc;
                if (pr >= 0 && pr < img.height() && pc >= 0 && pc < img.width())
                    img.set(pr, pc, color);
            }
    }
}

} // namespace detail

inline Phantom generate_phantom(const PhantomSpec& spec) {
    detail::PhantomRng rng(spec.seed);
    RgbImage img(spec.width, spec.height, spec.skin);
    BinaryMask gt(spec.width, spec.height, false);

    // Lesion with a soft edge; ground truth is the exact ellipse.
    for (int r = 0; r < spec.height; ++r) {
        for (int c = 0; c < spec.width; ++c) {
            const double q = detail::ellipse_value(spec, r, c);
            if (q <= 1.0) gt.set(r, c, true);
            // Soft transition over roughly two pixels around the boundary.
            const double dist = (std::sqrt(q) - 1.0) *
                                std::min(spec.semi_axis_a, spec.semi_axis_b);
            if (dist <= -1.0) {
                img.set(r, c, spec.lesion);
            } else if (dist < 1.0) {
                img.set(r, c, detail::mix(spec.lesion, spec.skin, (dist + 1.0) / 2.0));
            }
        }
    }

    if (spec.vignette) {
        // Radial darkening strongest in the corners, echoing dark-corner
        // acquisition artifacts.
        const double cy = (spec.height - 1) / 2.0, cx = (spec.width - 1) / 2.0;
        const double max_d = std::hypot(cy, cx);
        for (int r = 0; r < spec.height; ++r)
            for (int c = 0; c < spec.width; ++c) {
                const double d = std::hypot(r - cy, c - cx) / max_d;
                if (d < 0.75) continue;
                const double k = 1.0 - std::min(1.0, (d - 0.75) / 0.25) * 0.85;
                const Rgb px = img.at(r, c);
                img.set(r, c, {static_cast<std::uint8_t>(px.r * k),
                               static_cast<std::uint8_t>(px.g * k),
                               static_cast<std::uint8_t>(px.b * k)});
            }
    }

    for (int i = 0; i < spec.hair_strokes; ++i) {
        const double r0 = rng.uniform(0, spec.height - 1);
        const double c0 = rng.uniform(0, spec.width - 1);
        const double angle = rng.uniform(0, 2 * 3.14159265358979);
        const double len = rng.uniform(0.25, 0.6) * std::min(spec.width, spec.height);
        const double r1 = r0 + len * std::sin(angle);
        const double c1 = c0 + len * std::cos(angle);
        const int shade = rng.range(20, 60);
        detail::draw_thick_line(img, r0, c0, r1, c1, rng.uniform(1.0, 2.5),
                                {static_cast<std::uint8_t>(shade),
                                 static_cast<std::uint8_t>(shade * 2 / 3),
                                 static_cast<std::uint8_t>(shade / 2)});
    }

    for (int i = 0; i < spec.bubbles; ++i) {
        const int br = rng.range(8, 20);
        const int rr = rng.range(br, spec.height - 1 - br);
        const int cc = rng.range(br, spec.width - 1 - br);
        for (int dr = -br; dr <= br; ++dr)
            for (int dc = -br; dc <= br; ++dc)
                if (dr * dr + dc * dc <= br * br) {
                    const Rgb px = img.at(rr + dr, cc + dc);
                    img.set(rr + dr, cc + dc, detail::mix(px, {250, 250, 250}, 0.45));
                }
    }

    if (spec.noise_amplitude > 0) {
        const int amp = spec.noise_amplitude;
        for (int r = 0; r < spec.height; ++r)
            for (int c = 0; c < spec.width; ++c) {
                const Rgb px = img.at(r, c);
                auto jitter = [&](std::uint8_t v) {
                    const int dv = rng.range(-amp, amp);
                    return static_cast<std::uint8_t>(std::clamp(v + dv, 0, 255));
                };
                img.set(r, c, {jitter(px.r), jitter(px.g), jitter(px.b)});
            }
    }

    return {std::move(img), std::move(gt)};
}

// The standard randomized corpus: ellipse + noise + hair + vignette, with
// per-index variation derived from the corpus seed.
inline PhantomSpec corpus_phantom_spec(std::uint32_t corpus_seed, int index) {
    detail::PhantomRng rng(corpus_seed * 2654435761u + static_cast<std::uint32_t>(index) + 1);
    PhantomSpec spec;
    spec.width = rng.range(520, 760);
    spec.height = rng.range(520, 760);
    spec.skin = {static_cast<std::uint8_t>(rng.range(190, 225)),
                 static_cast<std::uint8_t>(rng.range(160, 195)),
                 static_cast<std::uint8_t>(rng.range(140, 175))};
    spec.lesion = {static_cast<std::uint8_t>(rng.range(60, 110)),
                   static_cast<std::uint8_t>(rng.range(35, 75)),
                   static_cast<std::uint8_t>(rng.range(30, 65))};
    spec.center_row = spec.height / 2.0 + rng.uniform(-0.08, 0.08) * spec.height;
    spec.center_col = spec.width / 2.0 + rng.uniform(-0.08, 0.08) * spec.width;
    const double base = 0.22 * std::min(spec.width, spec.height);
    spec.semi_axis_a = base * rng.uniform(0.85, 1.25);
    spec.semi_axis_b = base * rng.uniform(0.6, 0.95);
    spec.rotation_rad = rng.uniform(0, 3.14159265358979);
    spec.noise_amplitude = rng.range(2, 5);
    spec.hair_strokes = rng.range(10, 30);
    spec.vignette = rng.range(0, 2) != 0; // two of three phantoms get corners
    spec.bubbles = rng.range(0, 3);
    spec.seed = rng.next();
    return spec;
}

} // namespace scs
