#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stage {

struct CellRect {
    int x = 0, y = 0; // top-left cell
    int w = 0, h = 0;
};

struct CellPoint {
    int x = 0, y = 0;
};

// 2D occupancy bitmap with a summed-area table for O(1) free-rectangle
// queries. The table is rebuilt lazily from the first dirty row; a naive
// always-scan mode exists for differential testing.
class CollisionGrid {
public:
    CollisionGrid(int width, int height, bool naive_mode = false);

    int width() const { return width_; }
    int height() const { return height_; }

    // Sets every cell of `rect` to 1. Throws BoundsError if rect exceeds the
    // grid. Idempotent.
    void mark_rect(const CellRect& rect);

    // True iff every cell of `rect` is 0.
    bool is_free(const CellRect& rect) const;

    // Placement position (top-left cell) of a fully free w x h rectangle,
    // chosen by ascending Chebyshev distance of the candidate rectangle's
    // center from `preferred`, ties broken by ascending x then ascending y.
    // nullopt when no free rectangle exists.
    std::optional<CellPoint> find_free_rect(int w, int h, CellPoint preferred) const;

    // Like find_free_rect but ordered by vertical distance of the candidate's
    // center row from `center_row` first, then ascending x, then ascending y.
    // Used for surface mounting at a requested height.
    std::optional<CellPoint> find_free_rect_at_row(int w, int h, int center_row) const;

    int occupied_count() const;

    // Plain PBM (P1) dump for inspection.
    std::string to_pbm() const;

private:
    bool cell(int x, int y) const { return occupancy_[size_t(y) * width_ + x] != 0; }
    void ensure_prefix() const;
    int rect_sum(const CellRect& rect) const;

    int width_ = 0, height_ = 0;
    bool naive_mode_ = false;
    std::vector<uint8_t> occupancy_;
    // prefix_[(y+1)*(w+1) + (x+1)] = occupied count in [0,x] x [0,y]
    mutable std::vector<int32_t> prefix_;
    mutable int dirty_from_row_ = 0; // rows >= this need a prefix rebuild
};

} // namespace stage
