#include "stage/collision_grid.hpp"

#include "stage/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace stage {

namespace {

void check_rect(const CellRect& rect, int width, int height) {
    if (rect.w <= 0 || rect.h <= 0)
        throw BoundsError("rectangle extents must be positive");
    if (rect.x < 0 || rect.y < 0 || rect.x + rect.w > width || rect.y + rect.h > height) {
        std::ostringstream msg;
        msg << "rectangle [" << rect.x << "," << rect.x + rect.w << ")x[" << rect.y << ","
            << rect.y + rect.h << ") exceeds grid " << width << "x" << height;
        throw BoundsError(msg.str());
    }
}

} // namespace

CollisionGrid::CollisionGrid(int width, int height, bool naive_mode)
    : width_(width), height_(height), naive_mode_(naive_mode) {
    if (width <= 0 || height <= 0)
        throw BoundsError("grid dimensions must be positive");
    occupancy_.assign(size_t(width) * height, 0);
    prefix_.assign(size_t(width + 1) * (height + 1), 0);
}

void CollisionGrid::mark_rect(const CellRect& rect) {
    check_rect(rect, width_, height_);
    for (int y = rect.y; y < rect.y + rect.h; ++y)
        std::fill_n(occupancy_.begin() + size_t(y) * width_ + rect.x, rect.w, uint8_t{1});
    dirty_from_row_ = std::min(dirty_from_row_, rect.y);
}

void CollisionGrid::ensure_prefix() const {
    if (dirty_from_row_ >= height_) return;
    const int w1 = width_ + 1;
    for (int y = dirty_from_row_; y < height_; ++y) {
        int32_t row_sum = 0;
        const uint8_t* row = occupancy_.data() + size_t(y) * width_;
        int32_t* out = prefix_.data() + size_t(y + 1) * w1;
        const int32_t* above = prefix_.data() + size_t(y) * w1;
        for (int x = 0; x < width_; ++x) {
            row_sum += row[x];
            out[x + 1] = above[x + 1] + row_sum;
        }
    }
    dirty_from_row_ = height_;
}

int CollisionGrid::rect_sum(const CellRect& rect) const {
    ensure_prefix();
    const int w1 = width_ + 1;
    const int x0 = rect.x, y0 = rect.y, x1 = rect.x + rect.w, y1 = rect.y + rect.h;
    return prefix_[size_t(y1) * w1 + x1] - prefix_[size_t(y0) * w1 + x1] -
           prefix_[size_t(y1) * w1 + x0] + prefix_[size_t(y0) * w1 + x0];
}

bool CollisionGrid::is_free(const CellRect& rect) const {
    check_rect(rect, width_, height_);
    if (naive_mode_) {
        for (int y = rect.y; y < rect.y + rect.h; ++y)
            for (int x = rect.x; x < rect.x + rect.w; ++x)
                if (cell(x, y)) return false;
        return true;
    }
    return rect_sum(rect) == 0;
}

std::optional<CellPoint> CollisionGrid::find_free_rect(int w, int h,
                                                       CellPoint preferred) const {
    if (w <= 0 || h <= 0) throw BoundsError("requested size must be positive");
    if (w > width_ || h > height_) return std::nullopt;

    // Candidate positions map to centers offset by (w-1)/2, (h-1)/2 (rounded
    // toward the origin), so the ring walk runs over centers.
    const int cdx = (w - 1) / 2, cdy = (h - 1) / 2;
    const int max_px = width_ - w, max_py = height_ - h;

    // Largest Chebyshev distance any candidate center can have from preferred.
    int max_d = 0;
    max_d = std::max(max_d, std::abs(cdx - preferred.x));
    max_d = std::max(max_d, std::abs(max_px + cdx - preferred.x));
    max_d = std::max(max_d, std::abs(cdy - preferred.y));
    max_d = std::max(max_d, std::abs(max_py + cdy - preferred.y));

    for (int d = 0; d <= max_d; ++d) {
        // Positions whose center lies on the Chebyshev ring of radius d,
        // visited in ascending x then ascending y.
        const int px_lo = std::max(0, preferred.x - d - cdx);
        const int px_hi = std::min(max_px, preferred.x + d - cdx);
        for (int px = px_lo; px <= px_hi; ++px) {
            const int adx = std::abs(px + cdx - preferred.x);
            if (adx == d) {
                const int py_lo = std::max(0, preferred.y - d - cdy);
                const int py_hi = std::min(max_py, preferred.y + d - cdy);
                for (int py = py_lo; py <= py_hi; ++py)
                    if (is_free({px, py, w, h})) return CellPoint{px, py};
            } else {
                // interior column: only the two horizontal ring edges
                for (int dy : {-d, d}) {
                    const int py = preferred.y + dy - cdy;
                    if (py >= 0 && py <= max_py && is_free({px, py, w, h}))
                        return CellPoint{px, py};
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<CellPoint> CollisionGrid::find_free_rect_at_row(int w, int h,
                                                              int center_row) const {
    if (w <= 0 || h <= 0) throw BoundsError("requested size must be positive");
    if (w > width_ || h > height_) return std::nullopt;

    const int max_py = height_ - h;
    // doubled arithmetic keeps half-cell centers exact: a candidate at py has
    // its center at (2*py + h)/2 rows
    const int base = 2 * center_row - h; // doubled py of the perfectly centered box
    const int max_key = std::max(std::abs(base), std::abs(2 * max_py - base));

    for (int k = std::abs(base % 2); k <= max_key; k += 2) {
        const int py_low = (base - k) / 2, py_high = (base + k) / 2;
        for (int px = 0; px <= width_ - w; ++px) {
            if (py_low >= 0 && py_low <= max_py && is_free({px, py_low, w, h}))
                return CellPoint{px, py_low};
            if (k > 0 && py_high >= 0 && py_high <= max_py && is_free({px, py_high, w, h}))
                return CellPoint{px, py_high};
        }
    }
    return std::nullopt;
}

int CollisionGrid::occupied_count() const {
    ensure_prefix();
    return prefix_[size_t(height_) * (width_ + 1) + width_];
}

std::string CollisionGrid::to_pbm() const {
    std::ostringstream out;
    out << "P1\n" << width_ << " " << height_ << "\n";
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) out << (cell(x, y) ? "1" : "0") << (x + 1 < width_ ? " " : "");
        out << "\n";
    }
    return out.str();
}

} // namespace stage
