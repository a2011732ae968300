// Frequency-tuned saliency: per-pixel CIELAB distance from the global mean
// Lab value, on a 5x5-binomial-blurred Lab field, rescaled to [0, 255].
// Contrast stretching saturates the bottom and top 1% of values.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "scs/color.hpp"
#include "scs/image.hpp"

namespace scs {

namespace detail {

// Separable [1 4 6 4 1]/16 blur with edge replication.
inline void binomial_blur_5(std::vector<double>& field, int w, int h) {
    static constexpr double k[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    std::vector<double> tmp(field.size());
    auto clampi = [](int v, int n) { return std::clamp(v, 0, n - 1); };
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0;
            for (int t = -2; t <= 2; ++t)
                acc += k[t + 2] * field[static_cast<std::size_t>(r) * w + clampi(c + t, w)];
            tmp[static_cast<std::size_t>(r) * w + c] = acc;
        }
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0;
            for (int t = -2; t <= 2; ++t)
                acc += k[t + 2] * tmp[static_cast<std::size_t>(clampi(r + t, h)) * w + c];
            field[static_cast<std::size_t>(r) * w + c] = acc;
        }
}

} // namespace detail

inline SaliencyMap compute_saliency_ft(const RgbImage& image) {
    const int w = image.width(), h = image.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<double> lch(n), ach(n), bch(n);
    double ml = 0, ma = 0, mb = 0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const Lab lab = rgb_to_lab(image.at(r, c));
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            lch[i] = lab.l;
            ach[i] = lab.a;
            bch[i] = lab.b;
            ml += lab.l;
            ma += lab.a;
            mb += lab.b;
        }
    }
    ml /= static_cast<double>(n);
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);

    detail::binomial_blur_5(lch, w, h);
    detail::binomial_blur_5(ach, w, h);
    detail::binomial_blur_5(bch, w, h);

    std::vector<double> raw(n);
    double max_raw = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dl = lch[i] - ml, da = ach[i] - ma, db = bch[i] - mb;
        raw[i] = std::sqrt(dl * dl + da * da + db * db);
        max_raw = std::max(max_raw, raw[i]);
    }

    SaliencyMap sm(w, h);
    if (max_raw > 0) {
        const double scale = 255.0 / max_raw;
        for (std::size_t i = 0; i < n; ++i)
            sm.values()[i] = static_cast<float>(raw[i] * scale);
    }
    return sm;
}

// Nearest-rank percentile over the sorted multiset; p in (0, 100].
inline double percentile_nearest_rank(std::vector<float> values, double p) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return values[rank - 1];
}

// Saturates the bottom and top 1% and stretches the rest to [0, 255].
inline SaliencyMap stretch_contrast(const SaliencyMap& sm) {
    const double lo = percentile_nearest_rank(sm.values(), 1.0);
    const double hi = percentile_nearest_rank(sm.values(), 99.0);
    SaliencyMap out(sm.width(), sm.height());
    if (hi <= lo) return out; // degenerate: all zeros
    const double scale = 255.0 / (hi - lo);
    for (std::size_t i = 0; i < sm.values().size(); ++i) {
        const double t = std::clamp((sm.values()[i] - lo) * scale, 0.0, 255.0);
        out.values()[i] = static_cast<float>(t);
    }
    return out;
}

} // namespace scs
