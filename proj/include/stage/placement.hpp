#pragma once

#include "stage/collision_grid.hpp"
#include "stage/geometry.hpp"
#include "stage/schema.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stage {

struct PlacedEntity {
    EntitySpec spec;
    Aabb box;
    std::optional<std::string> supported_by; // on_top / on_surface supporter
};

struct StageLayout {
    std::string stage_id;
    std::vector<PlacedEntity> entities;
    StageConfig config;
};

struct PlacementOptions {
    double cell_size = 1; // cm per grid cell
    bool repair = false;  // re-seat invalid anchors instead of erroring
    bool naive_grid = false;
};

// Floor grid plus per-anchor surface grids, shared by the placement passes.
class PlacementState {
public:
    PlacementState(const StageConfig& cfg, const PlacementOptions& options);

    // Anchors are checked in-bounds and mutually disjoint. In repair mode an
    // out-of-bounds or colliding anchor is re-seated at the nearest free floor
    // position, keeping its dims and height range; in strict mode every
    // violation is collected into one PlacementError.
    std::vector<PlacedEntity> validate_anchors(const std::vector<EntitySpec>& specs);

    PlacedEntity place_on_floor_near(const EntitySpec& spec,
                                     const std::optional<std::string>& anchor_id);
    PlacedEntity place_on_surface(const EntitySpec& spec, const std::string& anchor_id);
    PlacedEntity place_on_top(const EntitySpec& spec, const std::string& supporter_id);

    const CollisionGrid& floor() const { return *floor_; }

private:
    struct SurfaceMaps {
        Aabb box; // the anchor's placed box
        std::unique_ptr<CollisionGrid> front, left, right, top;
    };

    SurfaceMaps& surfaces_for(const std::string& anchor_id);
    const Aabb& anchor_box(const std::string& anchor_id) const;
    void register_anchor(const std::string& id, const Aabb& box);
    CellRect footprint_cells(const Aabb& box) const;
    int to_cells(double cm) const;

    StageConfig cfg_;
    PlacementOptions options_;
    std::unique_ptr<CollisionGrid> floor_;
    std::map<std::string, SurfaceMaps> anchors_;
};

// Full pipeline placement: anchors first, then non-anchors in file order,
// then ornaments in file order. Deterministic for identical inputs.
StageLayout place_scene(const SceneSpec& scene, const StageConfig& cfg,
                        const PlacementOptions& options = {});

// Layout file I/O: ground-truth-compatible fields extended with id, kind and
// supported_by (see docs/formats.md).
std::string serialize_layout(const StageLayout& layout);
StageLayout parse_layout(const std::string& text, const StageConfig& cfg);

} // namespace stage
