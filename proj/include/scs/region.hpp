// Connected-component labeling and per-region statistics.

#pragma once

#include <stdexcept>
#include <vector>

#include "scs/color.hpp"
#include "scs/image.hpp"

namespace scs {

enum class Polarity { Foreground, Background };

// One connected component as a pixel set with cached stats. The color and
// saliency means are filled on demand by annotate_regions.
struct PixelRegion {
    std::vector<Pixel> pixels;
    std::size_t area = 0;
    bool touches_frame = false;
    RgbF mean_color{0, 0, 0};
    double mean_saliency = 0.0;
};

// Labels the connected components of the requested polarity. Components are
// returned in scan order of their first (topmost-leftmost) pixel.
inline std::vector<PixelRegion> label_components(const BinaryMask& mask,
                                                 int connectivity,
                                                 Polarity polarity) {
    if (mask.width() < 1 || mask.height() < 1)
        throw std::invalid_argument("label_components: zero-sized grid");
    if (connectivity != 4 && connectivity != 8)
        throw std::invalid_argument("label_components: connectivity must be 4 or 8");

    const int w = mask.width(), h = mask.height();
    const bool want = polarity == Polarity::Foreground;

    static constexpr int dr8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
    static constexpr int dc8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
    static constexpr int dr4[] = {-1, 0, 0, 1};
    static constexpr int dc4[] = {0, -1, 1, 0};
    const int* dr = connectivity == 8 ? dr8 : dr4;
    const int* dc = connectivity == 8 ? dc8 : dc4;
    const int ndirs = connectivity;

    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
    std::vector<PixelRegion> regions;
    std::vector<Pixel> stack;

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            if (seen[i] || mask.at(r, c) != want) continue;

            PixelRegion region;
            stack.push_back({r, c});
            seen[i] = 1;
            while (!stack.empty()) {
                const Pixel p = stack.back();
                stack.pop_back();
                region.pixels.push_back(p);
                if (p.row == 0 || p.row == h - 1 || p.col == 0 || p.col == w - 1)
                    region.touches_frame = true;
                for (int k = 0; k < ndirs; ++k) {
                    const int nr = p.row + dr[k], nc = p.col + dc[k];
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                    const std::size_t ni = static_cast<std::size_t>(nr) * w + nc;
                    if (seen[ni] || mask.at(nr, nc) != want) continue;
                    seen[ni] = 1;
                    stack.push_back({nr, nc});
                }
            }
            region.area = region.pixels.size();
            regions.push_back(std::move(region));
        }
    }
    return regions;
}

// Fills mean_color and mean_saliency; either source may be null.
inline void annotate_regions(std::vector<PixelRegion>& regions,
                             const RgbImage* image,
                             const SaliencyMap* sm) {
    for (auto& region : regions) {
        if (region.pixels.empty()) continue;
        if (image) {
            double sr = 0, sg = 0, sb = 0;
            for (const Pixel& p : region.pixels) {
                const Rgb c = image->at(p.row, p.col);
                sr += c.r;
                sg += c.g;
                sb += c.b;
            }
            const double n = static_cast<double>(region.pixels.size());
            region.mean_color = {sr / n, sg / n, sb / n};
        }
        if (sm) {
            double s = 0;
            for (const Pixel& p : region.pixels) s += sm->at(p.row, p.col);
            region.mean_saliency = s / static_cast<double>(region.pixels.size());
        }
    }
}

inline BinaryMask mask_from_regions(const std::vector<const PixelRegion*>& regions,
                                    int width, int height) {
    BinaryMask out(width, height, false);
    for (const PixelRegion* region : regions)
        for (const Pixel& p : region->pixels) out.set(p.row, p.col, true);
    return out;
}

} // namespace scs
