// Convex hulls over pixel sets: monotone chain plus exact rasterization.
//
// Hull vertices are pixel centers with x = column, y = row. Rasterization is
// inclusive: a pixel belongs to the hull mask when its center lies inside or
// on the polygon, decided in exact integer arithmetic.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "scs/image.hpp"

namespace scs {

namespace detail {

inline std::int64_t cross(const Pixel& o, const Pixel& a, const Pixel& b) {
    // x = col, y = row
    const std::int64_t ax = a.col - o.col, ay = a.row - o.row;
    const std::int64_t bx = b.col - o.col, by = b.row - o.row;
    return ax * by - ay * bx;
}

inline std::int64_t floor_div(std::int64_t n, std::int64_t d) {
    std::int64_t q = n / d, r = n % d;
    return (r != 0 && ((r < 0) != (d < 0))) ? q - 1 : q;
}

inline std::int64_t ceil_div(std::int64_t n, std::int64_t d) {
    return -floor_div(-n, d);
}

} // namespace detail

// Monotone-chain convex hull. Returns the minimal vertex set in a consistent
// winding order; degenerate inputs yield one or two vertices.
inline std::vector<Pixel> convex_hull_vertices(std::vector<Pixel> points) {
    if (points.empty())
        throw std::invalid_argument("convex_hull_vertices: empty pixel set");
    std::sort(points.begin(), points.end(), [](const Pixel& a, const Pixel& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;

    std::vector<Pixel> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) { // upper chain
        while (k >= lo && detail::cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Visits every grid pixel whose center lies in the hull polygon, as per-row
// column intervals. The intersection of edge half-planes is solved exactly.
template <typename RowFn>
inline void for_each_hull_row(const std::vector<Pixel>& hull, int width, int height, RowFn&& fn) {
    if (hull.empty()) return;
    int min_r = hull[0].row, max_r = hull[0].row;
    int min_c = hull[0].col, max_c = hull[0].col;
    for (const Pixel& v : hull) {
        min_r = std::min(min_r, v.row);
        max_r = std::max(max_r, v.row);
        min_c = std::min(min_c, v.col);
        max_c = std::max(max_c, v.col);
    }
    const int r0 = std::max(0, min_r), r1 = std::min(height - 1, max_r);
    const std::size_t m = hull.size();

    for (int r = r0; r <= r1; ++r) {
        std::int64_t lo = min_c, hi = max_c;
        bool feasible = true;
        for (std::size_t i = 0; i < m && feasible; ++i) {
            const Pixel& vi = hull[i];
            const Pixel& vj = hull[(i + 1) % m];
            if (m == 2 && i == 1) break; // a segment has one distinct edge
            // cross((vj - vi), (q - vi)) >= 0  <=>  A*q.col <= B
            const std::int64_t a = vj.row - vi.row;
            const std::int64_t b =
                static_cast<std::int64_t>(vj.col - vi.col) * (r - vi.row) +
                a * static_cast<std::int64_t>(vi.col);
            if (a > 0)
                hi = std::min(hi, detail::floor_div(b, a));
            else if (a < 0)
                lo = std::max(lo, detail::ceil_div(b, a));
            else
                feasible = b >= 0;
        }
        if (m == 2) {
            // Both half-planes of the single edge: stay on the line itself.
            const Pixel& vi = hull[0];
            const Pixel& vj = hull[1];
            const std::int64_t a = vj.row - vi.row;
            const std::int64_t b =
                static_cast<std::int64_t>(vj.col - vi.col) * (r - vi.row) +
                a * static_cast<std::int64_t>(vi.col);
            if (a != 0) {
                // exact intersection column, integer or nothing
                const std::int64_t q = detail::floor_div(b, a);
                feasible = q * a == b;
                lo = std::max(lo, q);
                hi = std::min(hi, q);
            } else {
                feasible = r == vi.row;
            }
        }
        if (!feasible) continue;
        lo = std::max<std::int64_t>(lo, 0);
        hi = std::min<std::int64_t>(hi, width - 1);
        if (lo > hi) continue;
        fn(r, static_cast<int>(lo), static_cast<int>(hi));
    }
}

// Rasterized filled convex hull of a pixel set, clipped to the grid.
inline BinaryMask convex_hull_mask(const std::vector<Pixel>& pixels, int width, int height) {
    if (pixels.empty())
        throw std::invalid_argument("convex_hull_mask: empty pixel set");
    BinaryMask out(width, height, false);
    const std::vector<Pixel> hull = convex_hull_vertices(pixels);
    for_each_hull_row(hull, width, height, [&](int r, int c0, int c1) {
        for (int c = c0; c <= c1; ++c) out.set(r, c, true);
    });
    return out;
}

inline BinaryMask convex_hull_mask(const BinaryMask& mask) {
    std::vector<Pixel> pixels;
    for (int r = 0; r < mask.height(); ++r)
        for (int c = 0; c < mask.width(); ++c)
            if (mask.at(r, c)) pixels.push_back({r, c});
    return convex_hull_mask(pixels, mask.width(), mask.height());
}

// Pixel count of the rasterized hull without materializing the mask.
inline std::size_t convex_hull_area(const std::vector<Pixel>& pixels, int width, int height) {
    if (pixels.empty())
        throw std::invalid_argument("convex_hull_area: empty pixel set");
    const std::vector<Pixel> hull = convex_hull_vertices(pixels);
    std::size_t area = 0;
    for_each_hull_row(hull, width, height,
                      [&](int, int c0, int c1) { area += static_cast<std::size_t>(c1 - c0 + 1); });
    return area;
}

// --- real-valued polygons (used when mapping hulls back to full resolution) --

struct PointF {
    double x = 0, y = 0;
};

// Inclusive rasterization of a convex polygon with real vertices; same
// winding convention as convex_hull_vertices.
inline BinaryMask rasterize_convex_polygon(const std::vector<PointF>& poly, int width, int height) {
    BinaryMask out(width, height, false);
    if (poly.empty()) return out;
    if (poly.size() == 1) {
        const int r = static_cast<int>(std::lround(poly[0].y));
        const int c = static_cast<int>(std::lround(poly[0].x));
        if (r >= 0 && r < height && c >= 0 && c < width) out.set(r, c, true);
        return out;
    }
    double min_y = poly[0].y, max_y = poly[0].y;
    for (const PointF& v : poly) {
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    const int r0 = std::max(0, static_cast<int>(std::ceil(min_y - 1e-9)));
    const int r1 = std::min(height - 1, static_cast<int>(std::floor(max_y + 1e-9)));
    const std::size_t m = poly.size();
    constexpr double kEps = 1e-9;

    for (int r = r0; r <= r1; ++r) {
        double lo = 0, hi = width - 1;
        bool feasible = true;
        for (std::size_t i = 0; i < m && feasible; ++i) {
            const PointF& vi = poly[i];
            const PointF& vj = poly[(i + 1) % m];
            const double a = vj.y - vi.y;
            const double b = (vj.x - vi.x) * (r - vi.y) + a * vi.x;
            if (a > kEps)
                hi = std::min(hi, b / a);
            else if (a < -kEps)
                lo = std::max(lo, b / a);
            else
                feasible = b >= -kEps;
        }
        if (!feasible) continue;
        const int c0 = std::max(0, static_cast<int>(std::ceil(lo - kEps)));
        const int c1 = std::min(width - 1, static_cast<int>(std::floor(hi + kEps)));
        for (int c = c0; c <= c1; ++c) out.set(r, c, true);
    }
    return out;
}

} // namespace scs
