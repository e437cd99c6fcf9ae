#pragma once

#include <optional>
#include <string>
#include <vector>

namespace stage {

// Axis-aligned box in stage coordinates (cm).
// x spans stage width (audience's left to right), y spans depth (y=0 downstage,
// y=N at the back wall), h spans height. Extents are strictly positive on all
// axes; h0 may be negative so below-floor volume stays measurable.
struct Aabb {
    double x0 = 0, y0 = 0; // footprint top-left corner
    double x1 = 0, y1 = 0; // footprint bottom-right corner
    double h0 = 0, h1 = 0; // lowest and highest points

    double volume() const { return (x1 - x0) * (y1 - y0) * (h1 - h0); }
    bool valid() const;
};

struct Point3 {
    double x = 0, y = 0, z = 0;
};

enum class ProjectionMode { perspective, orthographic };

struct StageConfig {
    double stage_size = 1000;   // N, cm per axis
    double back_wall_y = 1000;  // plane of the back wall
    Point3 audience_left{-100, -500, 120};
    Point3 audience_right{1100, -500, 120};
    double eye_height = 120;
    ProjectionMode projection_mode = ProjectionMode::perspective;

    void validate() const; // throws SchemaError on violated invariants
};

// Non-negative volume in cm^3.
struct Volume {
    double cm3 = 0;
    double m3() const { return cm3 / 1e6; }
};

// max(0, overlap) product over the three axes; symmetric; touching faces
// contribute zero.
Volume intersection_volume(const Aabb& a, const Aabb& b);

// Portion of `a` inside [0,N]^3, or nullopt when there is no interior overlap.
std::optional<Aabb> clip_to_stage(const Aabb& a, const StageConfig& cfg);

// volume(a) - volume(a ∩ [0,N]^3).
Volume out_of_bound_volume(const Aabb& a, const StageConfig& cfg);

// Exact volume of (∪ set_a) ∩ (∪ set_b) by coordinate compression; overlaps
// within a set are not double counted.
Volume union_intersection_volume(const std::vector<Aabb>& set_a,
                                 const std::vector<Aabb>& set_b);

} // namespace stage
