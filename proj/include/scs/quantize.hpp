// Color quantization: a 1-D self-organizing color map (default) and a
// median-cut fallback behind the same interface. Both remap every pixel to
// the exact nearest palette color, so the output is independent of how the
// palette was learned.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scs/image.hpp"
#include "scs/params.hpp"

namespace scs {

// Ordered list of at most palette_size distinct colors.
struct Palette {
    std::vector<Rgb> colors;
};

namespace detail {

inline std::uint32_t pack_rgb(Rgb c) {
    return (static_cast<std::uint32_t>(c.r) << 16) |
           (static_cast<std::uint32_t>(c.g) << 8) | c.b;
}

inline Rgb unpack_rgb(std::uint32_t v) {
    return {static_cast<std::uint8_t>(v >> 16),
            static_cast<std::uint8_t>((v >> 8) & 0xff),
            static_cast<std::uint8_t>(v & 0xff)};
}

// xorshift32; implementation-pinned so runs are reproducible across stdlibs.
struct Rng32 {
    std::uint32_t state;
    explicit Rng32(std::uint32_t seed) : state(seed ? seed : 0x9e3779b9u) {}
    std::uint32_t next() {
        std::uint32_t x = state;
        x ^= x << 13;
        x ^= x >> 17;
        x ^= x << 5;
        return state = x;
    }
    std::uint32_t below(std::uint32_t n) { return next() % n; }
};

inline std::size_t nearest_palette_index(const std::vector<Rgb>& palette, Rgb c) {
    std::size_t best = 0;
    long best_d = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < palette.size(); ++i) {
        const long dr = static_cast<long>(palette[i].r) - c.r;
        const long dg = static_cast<long>(palette[i].g) - c.g;
        const long db = static_cast<long>(palette[i].b) - c.b;
        const long d = dr * dr + dg * dg + db * db;
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

// Kohonen-style training of a 1-D neuron line over sampled pixels.
inline std::vector<Rgb> train_som_palette(const RgbImage& image, int colnum, std::uint32_t seed) {
    const std::size_t npx = image.pixel_count();
    const std::size_t target_samples = std::min<std::size_t>(npx, 30000);
    const std::size_t stride = std::max<std::size_t>(1, npx / target_samples);

    Rng32 rng(seed ^ 0x5c5c5c5cu);
    std::vector<std::uint32_t> samples;
    samples.reserve(target_samples + 1);
    for (std::size_t i = 0; i < npx; i += stride) {
        const int r = static_cast<int>(i / image.width());
        const int c = static_cast<int>(i % image.width());
        samples.push_back(pack_rgb(image.at(r, c)));
    }
    // Fisher-Yates with the pinned generator.
    for (std::size_t i = samples.size(); i > 1; --i)
        std::swap(samples[i - 1], samples[rng.below(static_cast<std::uint32_t>(i))]);

    const int n = colnum;
    std::vector<std::array<double, 3>> neurons(n);
    for (int i = 0; i < n; ++i) {
        const double v = n == 1 ? 128.0 : 255.0 * i / (n - 1);
        neurons[i] = {v, v, v};
    }

    const std::size_t total = samples.size() * 2; // two sweeps
    std::size_t step = 0;
    for (std::size_t sweep = 0; sweep < 2; ++sweep) {
        for (std::uint32_t packed : samples) {
            const Rgb c = unpack_rgb(packed);
            const double progress = static_cast<double>(step++) / static_cast<double>(total);
            const double alpha = 0.5 * (1.0 - progress) + 0.01;
            const int radius = std::max(0, static_cast<int>((n / 8.0) * (1.0 - progress)));

            int best = 0;
            double best_d = std::numeric_limits<double>::max();
            for (int i = 0; i < n; ++i) {
                const double dr = neurons[i][0] - c.r;
                const double dg = neurons[i][1] - c.g;
                const double db = neurons[i][2] - c.b;
                const double d = dr * dr + dg * dg + db * db;
                if (d < best_d) {
                    best_d = d;
                    best = i;
                }
            }
            for (int i = std::max(0, best - radius); i <= std::min(n - 1, best + radius); ++i) {
                const double falloff = radius == 0 ? 1.0
                    : 1.0 - static_cast<double>(std::abs(i - best)) / (radius + 1);
                const double a = alpha * falloff;
                neurons[i][0] += a * (c.r - neurons[i][0]);
                neurons[i][1] += a * (c.g - neurons[i][1]);
                neurons[i][2] += a * (c.b - neurons[i][2]);
            }
        }
    }

    std::vector<Rgb> palette;
    std::unordered_set<std::uint32_t> used;
    for (const auto& nrn : neurons) {
        auto to_byte = [](double v) {
            return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        };
        const Rgb c{to_byte(nrn[0]), to_byte(nrn[1]), to_byte(nrn[2])};
        if (used.insert(pack_rgb(c)).second) palette.push_back(c);
    }
    return palette;
}

inline std::vector<Rgb> median_cut_palette(const RgbImage& image, int colnum) {
    // Histogram of distinct colors.
    std::unordered_map<std::uint32_t, std::size_t> hist;
    for (int r = 0; r < image.height(); ++r)
        for (int c = 0; c < image.width(); ++c)
            ++hist[pack_rgb(image.at(r, c))];

    struct Entry {
        Rgb color;
        std::size_t count;
    };
    std::vector<Entry> entries;
    entries.reserve(hist.size());
    for (const auto& [packed, count] : hist) entries.push_back({unpack_rgb(packed), count});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return pack_rgb(a.color) < pack_rgb(b.color);
    });

    struct Box {
        std::size_t begin, end; // range into entries
    };
    std::vector<Box> boxes{{0, entries.size()}};

    auto channel_range = [&](const Box& box, int ch) {
        int lo = 255, hi = 0;
        for (std::size_t i = box.begin; i < box.end; ++i) {
            const Rgb c = entries[i].color;
            const int v = ch == 0 ? c.r : ch == 1 ? c.g : c.b;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return hi - lo;
    };

    while (boxes.size() < static_cast<std::size_t>(colnum)) {
        // Split the box with the widest channel span.
        std::size_t pick = boxes.size();
        int widest = 0, pick_ch = 0;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            if (boxes[i].end - boxes[i].begin < 2) continue;
            for (int ch = 0; ch < 3; ++ch) {
                const int range = channel_range(boxes[i], ch);
                if (range > widest) {
                    widest = range;
                    pick = i;
                    pick_ch = ch;
                }
            }
        }
        if (pick == boxes.size()) break; // nothing left to split

        Box box = boxes[pick];
        auto key = [pick_ch](const Entry& e) {
            return pick_ch == 0 ? e.color.r : pick_ch == 1 ? e.color.g : e.color.b;
        };
        std::sort(entries.begin() + box.begin, entries.begin() + box.end,
                  [&](const Entry& a, const Entry& b) {
                      return key(a) != key(b) ? key(a) < key(b)
                                              : pack_rgb(a.color) < pack_rgb(b.color);
                  });
        // Median by pixel population.
        std::size_t total = 0;
        for (std::size_t i = box.begin; i < box.end; ++i) total += entries[i].count;
        std::size_t acc = 0, split = box.begin;
        for (std::size_t i = box.begin; i < box.end; ++i) {
            acc += entries[i].count;
            if (acc * 2 >= total) {
                split = i + 1;
                break;
            }
        }
        split = std::clamp(split, box.begin + 1, box.end - 1);
        boxes[pick] = {box.begin, split};
        boxes.push_back({split, box.end});
    }

    std::vector<Rgb> palette;
    std::unordered_set<std::uint32_t> used;
    for (const Box& box : boxes) {
        double sr = 0, sg = 0, sb = 0, n = 0;
        for (std::size_t i = box.begin; i < box.end; ++i) {
            const double w = static_cast<double>(entries[i].count);
            sr += w * entries[i].color.r;
            sg += w * entries[i].color.g;
            sb += w * entries[i].color.b;
            n += w;
        }
        if (n == 0) continue;
        auto to_byte = [](double v) {
            return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        };
        const Rgb c{to_byte(sr / n), to_byte(sg / n), to_byte(sb / n)};
        if (used.insert(pack_rgb(c)).second) palette.push_back(c);
    }
    return palette;
}

} // namespace detail

// Reduces the image to at most colnum colors. If the input already fits the
// budget the image passes through and the palette is its distinct colors in
// order of first appearance.
inline std::pair<RgbImage, Palette> quantize_colors(const RgbImage& image, int colnum,
                                                    CqMethod method = CqMethod::SelfOrganizing,
                                                    std::uint32_t seed = 0) {
    if (colnum < 2) throw std::invalid_argument("quantize_colors: colnum must be >= 2");

    // Under-budget passthrough.
    {
        std::unordered_set<std::uint32_t> distinct;
        std::vector<Rgb> order;
        bool within = true;
        for (int r = 0; r < image.height() && within; ++r) {
            for (int c = 0; c < image.width(); ++c) {
                const Rgb px = image.at(r, c);
                if (distinct.insert(detail::pack_rgb(px)).second) {
                    order.push_back(px);
                    if (order.size() > static_cast<std::size_t>(colnum)) {
                        within = false;
                        break;
                    }
                }
            }
        }
        if (within) return {image, Palette{std::move(order)}};
    }

    std::vector<Rgb> palette = method == CqMethod::SelfOrganizing
                                   ? detail::train_som_palette(image, colnum, seed)
                                   : detail::median_cut_palette(image, colnum);
    if (palette.empty()) palette.push_back({0, 0, 0});

    // Exact nearest-palette remap, memoized per distinct input color.
    RgbImage out(image.width(), image.height());
    std::unordered_map<std::uint32_t, std::size_t> memo;
    for (int r = 0; r < image.height(); ++r) {
        for (int c = 0; c < image.width(); ++c) {
            const Rgb px = image.at(r, c);
            const std::uint32_t key = detail::pack_rgb(px);
            auto it = memo.find(key);
            if (it == memo.end())
                it = memo.emplace(key, detail::nearest_palette_index(palette, px)).first;
            out.set(r, c, palette[it->second]);
        }
    }
    return {std::move(out), Palette{std::move(palette)}};
}

// Snaps a color to the nearest palette entry (used after hair inpainting so
// later color criteria see palette colors only).
inline Rgb snap_to_palette(const Palette& palette, Rgb c) {
    if (palette.colors.empty()) return c;
    return palette.colors[detail::nearest_palette_index(palette.colors, c)];
}

} // namespace scs
