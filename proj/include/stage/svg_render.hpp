#pragma once

#include "stage/placement.hpp"
#include "stage/projection.hpp"

#include <string>
#include <vector>

namespace stage {

enum class RenderMode { top, front };

// Deterministic SVG output: top mode draws footprints on the stage floor,
// front mode draws x/h silhouettes plus any occlusion boxes.
std::string render_svg(const StageLayout& layout, RenderMode mode,
                       const std::vector<OcclusionBox>& occlusions = {});

} // namespace stage
