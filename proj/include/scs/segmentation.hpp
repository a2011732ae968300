// The segmentation stage: iterated saliency binarization, the color/kernel
// perceptual criteria, foreground expansion across the color-transition
// band, and lesion finalization.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scs/color.hpp"
#include "scs/hair.hpp"
#include "scs/hull.hpp"
#include "scs/image.hpp"
#include "scs/morphology.hpp"
#include "scs/params.hpp"
#include "scs/quantize.hpp"
#include "scs/region.hpp"
#include "scs/resize.hpp"
#include "scs/saliency.hpp"

namespace scs {

// --- B.1.1: iterated binarization --------------------------------------------

struct BinarizationTrace {
    BinaryMask final_mask;
    std::vector<double> thresholds;     // mean saliency per iteration, non-increasing
    std::vector<Pixel> excluded_pixels; // members of frame-touching components
    int iterations = 0;

    double final_threshold() const { return thresholds.empty() ? 0.0 : thresholds.back(); }
};

// Repeatedly thresholds at the mean saliency of the not-yet-excluded pixels;
// any foreground component that touches the image frame is excluded from the
// next mean. Stops when no new frame component appears, the mean stops
// strictly decreasing, or the iteration cap is hit. The final mask never
// contains a frame-touching component.
inline BinarizationTrace binarize_iterative(const SaliencyMap& sm, const ScsParams& params) {
    if (sm.pixel_count() == 0)
        throw std::invalid_argument("binarize_iterative: empty saliency map");

    const int w = sm.width(), h = sm.height();
    std::vector<std::uint8_t> excluded(static_cast<std::size_t>(w) * h, 0);
    BinarizationTrace trace;
    trace.final_mask = BinaryMask(w, h, false);

    for (int iter = 0; iter < params.max_binarize_iters; ++iter) {
        double sum = 0.0;
        std::size_t active = 0;
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (!excluded[static_cast<std::size_t>(r) * w + c]) {
                    sum += sm.at(r, c);
                    ++active;
                }
        if (active == 0) break;
        const double mean = sum / static_cast<double>(active);
        if (!trace.thresholds.empty() && mean >= trace.thresholds.back()) break;
        trace.thresholds.push_back(mean);

        BinaryMask fg(w, h, false);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (!excluded[static_cast<std::size_t>(r) * w + c] && sm.at(r, c) > mean)
                    fg.set(r, c, true);

        bool new_frame_component = false;
        BinaryMask kept = fg;
        for (const PixelRegion& region :
             label_components(fg, params.connectivity, Polarity::Foreground)) {
            if (!region.touches_frame) continue;
            new_frame_component = true;
            for (const Pixel& p : region.pixels) {
                kept.set(p.row, p.col, false);
                excluded[static_cast<std::size_t>(p.row) * w + p.col] = 1;
                trace.excluded_pixels.push_back(p);
            }
        }
        trace.final_mask = std::move(kept);
        if (!new_frame_component) break;
    }
    trace.iterations = static_cast<int>(trace.thresholds.size());
    return trace;
}

// --- B.1.2 criterion (1): color proximity ------------------------------------

struct ColorProximityStats {
    Rgb c_star{};                  // darkest color in the current foreground
    std::vector<double> distances; // region-mean color distance from c_star
    double d_min = 0, d_max = 0;
    double delta = 0;       // d_max - d_min
    double small_delta = 0; // (d_max + d_min) / 2
};

inline ColorProximityStats color_proximity_stats(const std::vector<PixelRegion>& regions,
                                                 Rgb c_star) {
    ColorProximityStats st;
    st.c_star = c_star;
    st.distances.reserve(regions.size());
    for (const PixelRegion& region : regions)
        st.distances.push_back(color_distance(region.mean_color, to_rgbf(c_star)));
    const auto [lo, hi] = std::minmax_element(st.distances.begin(), st.distances.end());
    st.d_min = *lo;
    st.d_max = *hi;
    st.delta = st.d_max - st.d_min;
    st.small_delta = (st.d_max + st.d_min) / 2.0;
    return st;
}

// When the spread of region-to-darkest color distances exceeds the color
// threshold, regions farther than the midpoint distance move to background.
inline BinaryMask color_proximity_filter(const BinaryMask& mask, const RgbImage& image,
                                         const ScsParams& params) {
    require_same_grid(mask.width(), mask.height(), image.width(), image.height(),
                      "color_proximity_filter");
    if (mask.empty_foreground()) return mask;

    std::vector<PixelRegion> regions =
        label_components(mask, params.connectivity, Polarity::Foreground);
    annotate_regions(regions, &image, nullptr);
    const ColorProximityStats st = color_proximity_stats(regions, darkest_color(image, mask));
    if (st.delta <= params.color_threshold) return mask;

    BinaryMask out = mask;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (st.distances[i] <= st.small_delta) continue;
        for (const Pixel& p : regions[i].pixels) out.set(p.row, p.col, false);
    }
    return out;
}

// --- B.1.2 criterion (2): kernel vs peripheral -------------------------------

struct KernelPartition {
    std::vector<PixelRegion> kernel;
    std::vector<PixelRegion> peripheral;
    std::vector<Pixel> kernel_pixels; // union of kernel regions
    std::size_t kernel_area = 0;
    std::size_t kernel_hull_area = 0;
    int width = 0, height = 0;
};

// A region with fewer than kernel_min_salient pixels above twice the final
// binarization mean is peripheral. An empty kernel set promotes the largest
// region so the partition is never degenerate.
inline KernelPartition partition_kernel_peripheral(const BinaryMask& mask, const SaliencyMap& sm,
                                                   double mean_saliency,
                                                   const ScsParams& params) {
    require_same_grid(mask.width(), mask.height(), sm.width(), sm.height(),
                      "partition_kernel_peripheral");
    KernelPartition part;
    part.width = mask.width();
    part.height = mask.height();

    std::vector<PixelRegion> regions =
        label_components(mask, params.connectivity, Polarity::Foreground);
    const double bar = 2.0 * mean_saliency;
    std::vector<bool> is_kernel(regions.size(), false);
    for (std::size_t i = 0; i < regions.size(); ++i) {
        int salient = 0;
        for (const Pixel& p : regions[i].pixels)
            if (sm.at(p.row, p.col) > bar) ++salient;
        is_kernel[i] = salient >= params.kernel_min_salient;
    }
    if (!regions.empty() && std::none_of(is_kernel.begin(), is_kernel.end(), [](bool b) { return b; })) {
        std::size_t largest = 0;
        for (std::size_t i = 1; i < regions.size(); ++i)
            if (regions[i].area > regions[largest].area) largest = i;
        is_kernel[largest] = true;
    }

    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (is_kernel[i]) {
            part.kernel_area += regions[i].area;
            part.kernel_pixels.insert(part.kernel_pixels.end(), regions[i].pixels.begin(),
                                      regions[i].pixels.end());
            part.kernel.push_back(std::move(regions[i]));
        } else {
            part.peripheral.push_back(std::move(regions[i]));
        }
    }
    if (!part.kernel_pixels.empty())
        part.kernel_hull_area = convex_hull_area(part.kernel_pixels, part.width, part.height);
    return part;
}

// Hull-bridging area of one peripheral region against the (frozen) kernel:
// area of the joint hull minus the kernel hull area minus the region's own.
inline std::int64_t hull_bridge_area(const KernelPartition& part, const PixelRegion& region) {
    std::vector<Pixel> joint = part.kernel_pixels;
    joint.insert(joint.end(), region.pixels.begin(), region.pixels.end());
    const std::int64_t joint_hull =
        static_cast<std::int64_t>(convex_hull_area(joint, part.width, part.height));
    return joint_hull - static_cast<std::int64_t>(part.kernel_hull_area) -
           static_cast<std::int64_t>(region.area);
}

// Drops a peripheral region when it is smaller than the minimum visible
// area, larger than the whole kernel, or smaller than its hull-bridging
// area. Removals are judged independently against the frozen kernel.
inline BinaryMask peripheral_component_filter(const KernelPartition& part, int rows, int cols,
                                              const ScsParams& params) {
    if (part.kernel.empty())
        throw std::invalid_argument("peripheral_component_filter: kernel must not be empty");

    const double minsize = std::min(rows, cols);
    const double area_cutoff = params.min_area_frac * minsize;

    std::vector<const PixelRegion*> keep;
    for (const PixelRegion& region : part.kernel) keep.push_back(&region);
    for (const PixelRegion& region : part.peripheral) {
        const auto area = static_cast<std::int64_t>(region.area);
        if (static_cast<double>(area) < area_cutoff) continue;
        if (region.area > part.kernel_area) continue;
        const std::int64_t bridge = hull_bridge_area(part, region);
        const bool below_bridge = params.peripheral_remove_below_bridge ? area < bridge
                                                                        : area > bridge;
        if (below_bridge) continue;
        keep.push_back(&region);
    }
    return mask_from_regions(keep, part.width, part.height);
}

// --- B.1.3 criteria (3) and (4): foreground expansion ------------------------

struct TransitionRegion {
    std::vector<Pixel> candidate_pixels; // low-saliency band outside the mask
    RgbF mean_color{0, 0, 0};            // average color of the band
    RgbF background_mean_color{0, 0, 0}; // average color of the remaining background
    double cutoff = 0;                   // fraction of the band-to-background color distance
};

inline TransitionRegion make_transition_region(const BinaryMask& mask, const SaliencyMap& sm,
                                               const RgbImage& image, const ScsParams& params,
                                               double final_mean = 255.0) {
    TransitionRegion tr;
    double cand_sum[3] = {0, 0, 0}, back_sum[3] = {0, 0, 0};
    std::size_t back_n = 0;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c)) continue;
            const double s = sm.at(r, c);
            const bool candidate = params.transition_band == TransitionBand::BelowThreshold
                                       ? s < params.transition_saliency
                                       : s >= params.transition_saliency && s < final_mean;
            const Rgb px = image.at(r, c);
            if (candidate) {
                tr.candidate_pixels.push_back({r, c});
                cand_sum[0] += px.r;
                cand_sum[1] += px.g;
                cand_sum[2] += px.b;
            } else {
                ++back_n;
                back_sum[0] += px.r;
                back_sum[1] += px.g;
                back_sum[2] += px.b;
            }
        }
    }
    if (!tr.candidate_pixels.empty()) {
        const double n = static_cast<double>(tr.candidate_pixels.size());
        tr.mean_color = {cand_sum[0] / n, cand_sum[1] / n, cand_sum[2] / n};
    }
    if (back_n > 0) {
        const double n = static_cast<double>(back_n);
        tr.background_mean_color = {back_sum[0] / n, back_sum[1] / n, back_sum[2] / n};
    }
    if (!tr.candidate_pixels.empty() && back_n > 0)
        tr.cutoff = params.transition_color_frac *
                    color_distance(tr.background_mean_color, tr.mean_color);
    return tr;
}

// Candidates colored like the band survive; of those, exactly the ones
// 8-connected to the existing foreground join it. Never shrinks the mask.
inline BinaryMask expand_foreground(const BinaryMask& mask, const SaliencyMap& sm,
                                    const RgbImage& image, const ScsParams& params,
                                    double final_mean = 255.0) {
    require_same_grid(mask.width(), mask.height(), image.width(), image.height(),
                      "expand_foreground");
    require_same_grid(mask.width(), mask.height(), sm.width(), sm.height(), "expand_foreground");

    const TransitionRegion tr = make_transition_region(mask, sm, image, params, final_mean);
    const std::size_t non_fg = mask.pixel_count() - mask.foreground_count();
    if (tr.candidate_pixels.empty() || tr.candidate_pixels.size() == non_fg)
        return mask; // no candidates, or no background left to compare against

    const int w = mask.width(), h = mask.height();
    BinaryMask survivor(w, h, false);
    for (const Pixel& p : tr.candidate_pixels) {
        const double d = color_distance(to_rgbf(image.at(p.row, p.col)), tr.mean_color);
        if (d <= tr.cutoff) survivor.set(p.row, p.col, true);
    }

    // Flood from the current foreground through survivors (8-connectivity).
    BinaryMask out = mask;
    std::vector<Pixel> stack;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (mask.at(r, c)) stack.push_back({r, c});
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
    for (const Pixel& p : stack) seen[static_cast<std::size_t>(p.row) * w + p.col] = 1;

    static constexpr int dr8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
    static constexpr int dc8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
    while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        for (int k = 0; k < 8; ++k) {
            const int nr = p.row + dr8[k], nc = p.col + dc8[k];
            if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
            const std::size_t i = static_cast<std::size_t>(nr) * w + nc;
            if (seen[i] || !survivor.at(nr, nc)) continue;
            seen[i] = 1;
            out.set(nr, nc, true);
            stack.push_back({nr, nc});
        }
    }
    return out;
}

// --- B.2: lesion finalization -------------------------------------------------

inline int smooth_radius_for(const ScsParams& params, int width, int height) {
    const int minsize = std::min(width, height);
    return std::max(1, static_cast<int>(std::lround(params.smooth_radius_frac * minsize)));
}

// Smooths, fills holes, optionally keeps only the largest component and
// replaces it with its convex hull. An empty input falls back to a centered
// disk and reports low confidence.
inline std::pair<BinaryMask, bool> finalize_lesion(const BinaryMask& mask,
                                                   const ScsParams& params) {
    const int w = mask.width(), h = mask.height();
    const int minsize = std::min(w, h);

    if (mask.empty_foreground()) {
        BinaryMask disk(w, h, false);
        const double cy = (h - 1) / 2.0, cx = (w - 1) / 2.0;
        const double rad = std::max(1, minsize / 4);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if ((r - cy) * (r - cy) + (c - cx) * (c - cx) <= rad * rad)
                    disk.set(r, c, true);
        return {std::move(disk), true};
    }

    BinaryMask out = fill_holes(morph_smooth(mask, smooth_radius_for(params, w, h)));
    if (out.empty_foreground()) out = mask; // smoothing erased everything; skip it

    if (params.single_lesion) {
        const auto regions = label_components(out, params.connectivity, Polarity::Foreground);
        std::size_t largest = 0;
        for (std::size_t i = 1; i < regions.size(); ++i)
            if (regions[i].area > regions[largest].area) largest = i;
        std::vector<const PixelRegion*> keep{&regions[largest]};
        out = mask_from_regions(keep, w, h);
    }
    if (params.compute_hull) out = convex_hull_mask(out);
    return {std::move(out), false};
}

// --- full pipeline -------------------------------------------------------------

struct LesionResult {
    BinaryMask mask_reduced; // at working resolution
    BinaryMask mask_full;    // at the original input resolution
    std::vector<PointF> boundary; // hull polygon at the original resolution
    bool low_confidence = false;

    struct Trace {
        BinarizationTrace binarization;
        std::vector<std::pair<std::string, BinaryMask>> stage_masks;
        std::vector<std::pair<std::string, double>> timings_ms;
    } trace;
};

namespace detail {

class StageClock {
public:
    explicit StageClock(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}
    template <typename Fn>
    auto time(const std::string& name, Fn&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        auto result = fn();
        const auto t1 = std::chrono::steady_clock::now();
        sink_.emplace_back(name, std::chrono::duration<double, std::milli>(t1 - t0).count());
        return result;
    }

private:
    std::vector<std::pair<std::string, double>>& sink_;
};

inline BinaryMask upsample_nearest(const BinaryMask& mask, int out_w, int out_h) {
    BinaryMask out(out_w, out_h, false);
    for (int r = 0; r < out_h; ++r) {
        const int rr = std::min(mask.height() - 1,
                                static_cast<int>((r + 0.5) * mask.height() / out_h));
        for (int c = 0; c < out_w; ++c) {
            const int cc = std::min(mask.width() - 1,
                                    static_cast<int>((c + 0.5) * mask.width() / out_w));
            out.set(r, c, mask.at(rr, cc));
        }
    }
    return out;
}

} // namespace detail

// Runs the entire pipeline at reduced resolution, then maps the result back
// to the original grid by scaling the hull polygon and re-rasterizing.
// A stage that would empty the mask is skipped and its input restored.
inline LesionResult segment(const RgbImage& image, const ScsParams& params) {
    params.validate();
    if (image.width() < 16 || image.height() < 16)
        throw std::invalid_argument("segment: image must be at least 16x16");

    LesionResult result;
    detail::StageClock clock(result.trace.timings_ms);

    const RgbImage reduced = clock.time("resize", [&] { return resize_max_dim(image, params.max_dim); });
    const int rw = reduced.width(), rh = reduced.height();

    RgbImage work(1, 1);
    Palette palette;
    if (params.dehair_before_quantize) {
        const HairMask hair = clock.time("detect_hair", [&] {
            return detect_hair(reduced, hair_params_for(params, rw, rh));
        });
        const RgbImage dehaired =
            clock.time("remove_hair", [&] { return remove_hair(reduced, hair); });
        auto [quantized, pal] = clock.time("quantize", [&] {
            return quantize_colors(dehaired, params.palette_size, params.cq_method, params.seed);
        });
        work = std::move(quantized);
        palette = std::move(pal);
    } else {
        auto [quantized, pal] = clock.time("quantize", [&] {
            return quantize_colors(reduced, params.palette_size, params.cq_method, params.seed);
        });
        palette = std::move(pal);
        const HairMask hair = clock.time("detect_hair", [&] {
            return detect_hair(quantized, hair_params_for(params, rw, rh));
        });
        work = clock.time("remove_hair", [&] { return remove_hair(quantized, hair); });
        // Inpainted pixels may fall between palette entries; snap them back
        // so the color criteria see palette colors only.
        for (int r = 0; r < rh; ++r)
            for (int c = 0; c < rw; ++c)
                if (hair.mask.at(r, c)) work.set(r, c, snap_to_palette(palette, work.at(r, c)));
    }

    const SaliencyMap sm = clock.time("saliency", [&] {
        return stretch_contrast(compute_saliency_ft(work));
    });

    result.trace.binarization =
        clock.time("binarize", [&] { return binarize_iterative(sm, params); });
    const double mean_saliency = result.trace.binarization.final_threshold();
    BinaryMask bm = result.trace.binarization.final_mask;
    result.trace.stage_masks.emplace_back("binarized", bm);

    if (!bm.empty_foreground()) {
        BinaryMask filtered =
            clock.time("color_proximity", [&] { return color_proximity_filter(bm, work, params); });
        if (!filtered.empty_foreground()) bm = std::move(filtered);
        result.trace.stage_masks.emplace_back("color_filtered", bm);

        BinaryMask peripheral_filtered = clock.time("peripheral", [&] {
            const KernelPartition part = partition_kernel_peripheral(bm, sm, mean_saliency, params);
            return peripheral_component_filter(part, rh, rw, params);
        });
        if (!peripheral_filtered.empty_foreground()) bm = std::move(peripheral_filtered);
        result.trace.stage_masks.emplace_back("peripheral_filtered", bm);

        BinaryMask expanded = clock.time("expand", [&] {
            return expand_foreground(bm, sm, work, params, mean_saliency);
        });
        if (!expanded.empty_foreground()) bm = std::move(expanded);
        result.trace.stage_masks.emplace_back("expanded", bm);
    }

    auto [final_reduced, low_confidence] =
        clock.time("finalize", [&] { return finalize_lesion(bm, params); });
    result.mask_reduced = std::move(final_reduced);
    result.low_confidence = low_confidence;
    result.trace.stage_masks.emplace_back("final", result.mask_reduced);

    // Map back to the original grid.
    const double sx = static_cast<double>(image.width()) / rw;
    const double sy = static_cast<double>(image.height()) / rh;
    std::vector<Pixel> fg_pixels;
    for (int r = 0; r < rh; ++r)
        for (int c = 0; c < rw; ++c)
            if (result.mask_reduced.at(r, c)) fg_pixels.push_back({r, c});

    if (!fg_pixels.empty()) {
        for (const Pixel& v : convex_hull_vertices(fg_pixels))
            result.boundary.push_back({(v.col + 0.5) * sx - 0.5, (v.row + 0.5) * sy - 0.5});
    }

    if (rw == image.width() && rh == image.height()) {
        result.mask_full = result.mask_reduced;
    } else if (params.compute_hull && !result.boundary.empty()) {
        result.mask_full = rasterize_convex_polygon(result.boundary, image.width(), image.height());
    } else {
        result.mask_full = detail::upsample_nearest(result.mask_reduced, image.width(), image.height());
    }
    return result;
}

} // namespace scs
