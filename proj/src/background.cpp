#include "stage/background.hpp"

#include "stage/collision_grid.hpp"
#include "stage/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using nlohmann::json;

namespace stage {

std::vector<WallBox> allocate_background(const std::vector<BackgroundRequest>& requests,
                                         const std::vector<OcclusionBox>& occlusions,
                                         const StageConfig& cfg,
                                         const BackgroundOptions& options) {
    cfg.validate();
    const double n = cfg.stage_size;
    const double cell = options.cell_size;
    if (!(cell > 0)) throw SchemaError("cell_size must be positive");
    const int cells = std::max(1, int(std::ceil(n / cell - 1e-9)));
    CollisionGrid wall(cells, cells);

    // occlusions rounded outward to whole cells, so seated regions can never
    // share area with any occlusion box
    for (const auto& occ : occlusions) {
        if (occ.wall_x1 <= occ.wall_x0 || occ.wall_h1 <= occ.wall_h0) continue;
        int x0 = std::clamp(int(std::floor(occ.wall_x0 / cell + 1e-9)), 0, cells);
        int x1 = std::clamp(int(std::ceil(occ.wall_x1 / cell - 1e-9)), 0, cells);
        int h0 = std::clamp(int(std::floor(occ.wall_h0 / cell + 1e-9)), 0, cells);
        int h1 = std::clamp(int(std::ceil(occ.wall_h1 / cell - 1e-9)), 0, cells);
        if (x1 > x0 && h1 > h0) wall.mark_rect({x0, h0, x1 - x0, h1 - h0});
    }

    std::vector<WallBox> placed;
    for (const auto& req : requests) {
        if (!(req.width > 0 && req.height > 0 && req.width <= n && req.height <= n))
            throw SchemaError("background request '" + req.label +
                              "': dimensions must be positive and fit the wall");
        const int w = std::max(1, int(std::ceil(req.width / cell - 1e-9)));
        const int h = std::max(1, int(std::ceil(req.height / cell - 1e-9)));
        auto pos = wall.find_free_rect(w, h, {cells / 2, cells / 2});
        if (!pos)
            throw NoSpaceError("background request '" + req.label +
                               "': no occlusion-free wall region of " +
                               std::to_string(int(req.width)) + "x" +
                               std::to_string(int(req.height)) + " cm");
        wall.mark_rect({pos->x, pos->y, w, h});
        WallBox box;
        box.label = req.label;
        box.x0 = pos->x * cell;
        box.x1 = box.x0 + req.width;
        box.h0 = pos->y * cell;
        box.h1 = box.h0 + req.height;
        placed.push_back(std::move(box));
    }
    return placed;
}

BackgroundSpec emit_background_spec(const std::string& imagery,
                                    const std::vector<WallBox>& boxes,
                                    const StageConfig& cfg) {
    const double n = cfg.stage_size;
    BackgroundSpec spec;

    std::ostringstream prompt;
    prompt << imagery;
    if (!boxes.empty()) prompt << ". Background elements: ";
    for (size_t i = 0; i < boxes.size(); ++i) {
        const auto& b = boxes[i];
        BackgroundRegion region;
        region.label = b.label;
        region.u0 = b.x0 / n;
        region.u1 = b.x1 / n;
        // wall h grows up, image y grows down
        region.v0 = 1.0 - b.h1 / n;
        region.v1 = 1.0 - b.h0 / n;
        if (i) prompt << "; ";
        prompt << b.label << "@[" << region.u0 << "," << region.v0 << "," << region.u1
               << "," << region.v1 << "]";
        spec.regions.push_back(std::move(region));
    }
    spec.prompt_text = prompt.str();
    return spec;
}

std::string serialize_background_spec(const BackgroundSpec& spec) {
    json j;
    j["format"] = "background-spec/1";
    j["prompt"] = spec.prompt_text;
    j["image_size_hint"] = spec.image_size_hint;
    j["regions"] = json::array();
    for (const auto& r : spec.regions)
        j["regions"].push_back({{"label", r.label}, {"box", {r.u0, r.v0, r.u1, r.v1}}});
    return j.dump(2) + "\n";
}

} // namespace stage
