#pragma once

#include "stage/projection.hpp"
#include "stage/schema.hpp"

#include <string>
#include <vector>

namespace stage {

// Background element seated on the back wall, in wall cm coordinates
// (x across the wall, h up from the floor).
struct WallBox {
    std::string label;
    double x0 = 0, x1 = 0;
    double h0 = 0, h1 = 0;
};

// Normalized region for a layout-controlled image generator: [0,1]^2 with
// top-left origin, so v = 1 - h/N flips the vertical axis.
struct BackgroundRegion {
    std::string label;
    double u0 = 0, v0 = 0, u1 = 0, v1 = 0;
};

struct BackgroundSpec {
    std::string prompt_text;
    std::vector<BackgroundRegion> regions;
    int image_size_hint = 1024; // pixels
};

struct BackgroundOptions {
    double cell_size = 1;
};

// Seats each request on a wall occupancy grid with the occlusion boxes
// pre-marked; preferred position is the wall center, requests are processed
// in input order. Throws NoSpaceError naming the first unplaceable request.
std::vector<WallBox> allocate_background(const std::vector<BackgroundRequest>& requests,
                                         const std::vector<OcclusionBox>& occlusions,
                                         const StageConfig& cfg,
                                         const BackgroundOptions& options = {});

BackgroundSpec emit_background_spec(const std::string& imagery,
                                    const std::vector<WallBox>& boxes,
                                    const StageConfig& cfg);

std::string serialize_background_spec(const BackgroundSpec& spec);

} // namespace stage
