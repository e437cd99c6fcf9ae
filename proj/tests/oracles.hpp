#pragma once

#include "stage/collision_grid.hpp"
#include "stage/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

// Brute-force oracles, kept independent of the implementation paths they
// check. All assume integer-cm boxes within a small window.
namespace oracles {

inline bool voxel_inside(const stage::Aabb& b, int x, int y, int h) {
    // voxel (x,y,h) is the unit cube [x,x+1)x[y,y+1)x[h,h+1); use its center
    const double cx = x + 0.5, cy = y + 0.5, ch = h + 0.5;
    return cx > b.x0 && cx < b.x1 && cy > b.y0 && cy < b.y1 && ch > b.h0 && ch < b.h1;
}

// 1 cm voxel count of (union a) ∩ (union b) over [lo,hi)^3
inline double voxel_union_intersection(const std::vector<stage::Aabb>& set_a,
                                       const std::vector<stage::Aabb>& set_b, int lo,
                                       int hi) {
    double count = 0;
    for (int x = lo; x < hi; ++x)
        for (int y = lo; y < hi; ++y)
            for (int h = lo; h < hi; ++h) {
                bool in_a = false, in_b = false;
                for (const auto& b : set_a)
                    if (voxel_inside(b, x, y, h)) { in_a = true; break; }
                if (!in_a) continue;
                for (const auto& b : set_b)
                    if (voxel_inside(b, x, y, h)) { in_b = true; break; }
                if (in_b) count += 1;
            }
    return count;
}

inline double voxel_intersection(const stage::Aabb& a, const stage::Aabb& b, int lo, int hi) {
    double count = 0;
    for (int x = lo; x < hi; ++x)
        for (int y = lo; y < hi; ++y)
            for (int h = lo; h < hi; ++h)
                if (voxel_inside(a, x, y, h) && voxel_inside(b, x, y, h)) count += 1;
    return count;
}

// volume of `a` outside [0,n)^3, scanned over the box's own integer window
inline double voxel_out_of_bound(const stage::Aabb& a, double n, int = 0, int = 0) {
    double count = 0;
    const int x_lo = int(std::floor(a.x0)), x_hi = int(std::ceil(a.x1));
    const int y_lo = int(std::floor(a.y0)), y_hi = int(std::ceil(a.y1));
    const int h_lo = int(std::floor(a.h0)), h_hi = int(std::ceil(a.h1));
    for (int x = x_lo; x < x_hi; ++x)
        for (int y = y_lo; y < y_hi; ++y)
            for (int h = h_lo; h < h_hi; ++h) {
                if (!voxel_inside(a, x, y, h)) continue;
                const double cx = x + 0.5, cy = y + 0.5, ch = h + 0.5;
                const bool inside_stage =
                    cx > 0 && cx < n && cy > 0 && cy < n && ch > 0 && ch < n;
                if (!inside_stage) count += 1;
            }
    return count;
}

// exhaustive scan reproducing the documented search order
inline std::optional<stage::CellPoint> scan_free_rect(const stage::CollisionGrid& grid, int w,
                                                      int h, stage::CellPoint preferred) {
    std::optional<stage::CellPoint> best;
    long best_key_d = 0;
    for (int y = 0; y + h <= grid.height(); ++y)
        for (int x = 0; x + w <= grid.width(); ++x) {
            if (!grid.is_free({x, y, w, h})) continue;
            const int cx = x + (w - 1) / 2, cy = y + (h - 1) / 2;
            const long d = std::max(std::abs(cx - preferred.x), std::abs(cy - preferred.y));
            if (!best || d < best_key_d ||
                (d == best_key_d && (x < best->x || (x == best->x && y < best->y)))) {
                best = stage::CellPoint{x, y};
                best_key_d = d;
            }
        }
    return best;
}

} // namespace oracles
