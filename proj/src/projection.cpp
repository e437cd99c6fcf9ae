#include "stage/projection.hpp"

#include "stage/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

using nlohmann::json;

namespace stage {

namespace {

double clamp01n(double v, double n) { return std::clamp(v, 0.0, n); }

} // namespace

OcclusionBox shadow_from_viewer(const Aabb& entity, const Viewer& viewer,
                                const StageConfig& cfg) {
    const double n = cfg.stage_size;
    const double wall = cfg.back_wall_y;
    OcclusionBox box;

    if (cfg.projection_mode == ProjectionMode::orthographic) {
        // parallel rays along +y copy the silhouette onto the wall
        box.wall_x0 = clamp01n(entity.x0, n);
        box.wall_x1 = clamp01n(entity.x1, n);
        box.wall_h0 = clamp01n(std::max(entity.h0, 0.0), n);
        box.wall_h1 = clamp01n(entity.h1, n);
        return box;
    }

    const Point3& v = viewer.position;
    double min_x = 0, max_x = 0, min_z = 0, max_z = 0;
    bool first = true;
    for (double py : {entity.y0, entity.y1}) {
        if (py <= v.y)
            throw DegenerateError("entity not strictly between viewer and wall (y <= viewer y)");
        const double t = (wall - v.y) / (py - v.y);
        for (double px : {entity.x0, entity.x1}) {
            const double proj_x = v.x + t * (px - v.x);
            for (double pz : {entity.h0, entity.h1}) {
                const double proj_z = v.z + t * (pz - v.z);
                if (first) {
                    min_x = max_x = proj_x;
                    min_z = max_z = proj_z;
                    first = false;
                } else {
                    min_x = std::min(min_x, proj_x);
                    max_x = std::max(max_x, proj_x);
                    // top corners raise the shadow, bottom corners lower it
                    min_z = std::min(min_z, proj_z);
                    max_z = std::max(max_z, proj_z);
                }
            }
        }
    }
    box.wall_x0 = clamp01n(min_x, n);
    box.wall_x1 = clamp01n(max_x, n);
    box.wall_h0 = clamp01n(std::max(min_z, 0.0), n);
    box.wall_h1 = clamp01n(max_z, n);
    return box;
}

std::vector<OcclusionBox> occlusion_union(const StageLayout& layout,
                                          const StageConfig& cfg) {
    cfg.validate();
    Viewer left{cfg.audience_left};
    Viewer right{cfg.audience_right};

    std::vector<OcclusionBox> result;
    result.reserve(layout.entities.size());
    for (const auto& p : layout.entities) {
        try {
            OcclusionBox from_left = shadow_from_viewer(p.box, left, cfg);
            OcclusionBox from_right = shadow_from_viewer(p.box, right, cfg);
            OcclusionBox merged;
            merged.entity_id = p.spec.id;
            if (cfg.projection_mode == ProjectionMode::orthographic) {
                merged.wall_x0 = from_left.wall_x0;
                merged.wall_x1 = from_left.wall_x1;
            } else {
                // projected x is affine in viewer x with negative slope, so
                // the rightmost viewer gives the left edge and vice versa
                merged.wall_x0 = std::min(from_right.wall_x0, from_left.wall_x0);
                merged.wall_x1 = std::max(from_left.wall_x1, from_right.wall_x1);
            }
            merged.wall_h0 = std::min(from_left.wall_h0, from_right.wall_h0);
            merged.wall_h1 = std::max(from_left.wall_h1, from_right.wall_h1);
            result.push_back(std::move(merged));
        } catch (const DegenerateError& e) {
            throw DegenerateError("entity '" + p.spec.id + "': " + e.what());
        }
    }
    return result;
}

std::string serialize_occlusions(const std::vector<OcclusionBox>& boxes) {
    json j;
    j["format"] = "occlusions/1";
    j["boxes"] = json::array();
    for (const auto& b : boxes)
        j["boxes"].push_back({{"entity_id", b.entity_id},
                              {"wall_x", {b.wall_x0, b.wall_x1}},
                              {"wall_h", {b.wall_h0, b.wall_h1}}});
    return j.dump(2) + "\n";
}

std::vector<OcclusionBox> parse_occlusions(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.what());
    }
    if (!j.is_object() || !j.contains("format") || j["format"] != "occlusions/1")
        throw SchemaError("occlusions: expected format \"occlusions/1\"");
    std::vector<OcclusionBox> boxes;
    for (const auto& jb : j["boxes"]) {
        OcclusionBox b;
        b.entity_id = jb.at("entity_id").get<std::string>();
        b.wall_x0 = jb.at("wall_x")[0].get<double>();
        b.wall_x1 = jb.at("wall_x")[1].get<double>();
        b.wall_h0 = jb.at("wall_h")[0].get<double>();
        b.wall_h1 = jb.at("wall_h")[1].get<double>();
        if (b.wall_x0 > b.wall_x1 || b.wall_h0 > b.wall_h1)
            throw SchemaError("occlusion box '" + b.entity_id + "': inverted interval");
        boxes.push_back(std::move(b));
    }
    return boxes;
}

} // namespace stage
