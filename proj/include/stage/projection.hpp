#pragma once

#include "stage/geometry.hpp"
#include "stage/placement.hpp"

#include <string>
#include <vector>

namespace stage {

// Back-wall region occluded from some audience position; intervals are
// clamped to [0, N] on both axes.
struct OcclusionBox {
    std::string entity_id;
    double wall_x0 = 0, wall_x1 = 0; // horizontal interval on the back wall, cm
    double wall_h0 = 0, wall_h1 = 0; // vertical interval, cm
};

struct Viewer {
    Point3 position; // y < 0
};

// Shadow of one entity box on the plane y = back_wall_y as seen from a single
// viewer. Perspective mode projects all eight corners along rays from the
// viewer; orthographic mode copies the entity's x/h silhouette.
// Throws DegenerateError when the entity is not strictly between the viewer
// and the wall.
OcclusionBox shadow_from_viewer(const Aabb& entity, const Viewer& viewer,
                                const StageConfig& cfg);

// Union of shadows over every viewer x between the leftmost and rightmost
// front-row positions, one box per entity. The union is analytic: projected
// endpoints are affine in viewer x with negative slope, so the extreme
// viewers bound the whole interval.
std::vector<OcclusionBox> occlusion_union(const StageLayout& layout,
                                          const StageConfig& cfg);

std::string serialize_occlusions(const std::vector<OcclusionBox>& boxes);
std::vector<OcclusionBox> parse_occlusions(const std::string& text);

} // namespace stage
