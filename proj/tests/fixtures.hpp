#pragma once

#include "stage/schema.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

// Seeded scene generator used across the suites. Scenes are always
// placeable on the default 1000 cm stage: anchors sit in four disjoint
// slots, wall mounts hang above 100 cm and floor entities stay below
// 90 cm, so hanging entities clear everything standing under them.
inline stage::SceneSpec make_scene(uint64_t seed, int entity_count,
                                   int unique_categories = -1) {
    using namespace stage;
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto pick = [&](int n) { return int(rng() % uint64_t(n)); };

    entity_count = std::clamp(entity_count, 1, 22);
    if (unique_categories < 0) unique_categories = std::min(entity_count, 1 + pick(8));
    unique_categories = std::clamp(unique_categories, 1, entity_count);

    SceneSpec scene;
    scene.title = "fixture-" + std::to_string(seed);
    scene.imagery = "a moonlit castle hall with mist and cold blue light";

    const double slot_centers[4][2] = {{250, 300}, {750, 300}, {250, 750}, {750, 750}};
    const int anchor_count = std::min(entity_count, 2 + pick(2)); // 2 or 3 anchors
    std::vector<std::string> anchor_ids;
    int next_category = 0;
    auto category_for = [&](int index) {
        // first `unique_categories` entities get fresh categories, the rest reuse
        if (next_category < unique_categories)
            return "cat" + std::to_string(next_category++);
        return "cat" + std::to_string(index % unique_categories);
    };

    for (int i = 0; i < anchor_count; ++i) {
        EntitySpec e;
        e.id = "anchor" + std::to_string(i);
        e.name = "anchor piece " + std::to_string(i);
        e.category = category_for(i);
        e.kind = EntityKind::anchor;
        e.description = "large wooden structure";
        const double half_l = uniform(60, 140), half_w = uniform(50, 100);
        const double cx = slot_centers[i][0], cy = slot_centers[i][1];
        const double h1 = uniform(160, 290);
        e.anchor_box = Aabb{cx - half_l, cy - half_w, cx + half_l, cy + half_w, 0, h1};
        anchor_ids.push_back(e.id);
        scene.entities.push_back(std::move(e));
    }

    // per-anchor caps keep every fixture placeable: at most two wall mounts
    // (they fit the narrowest face side by side at the requested height) and
    // four tabletop props per anchor
    std::vector<int> mounts_used(anchor_ids.size(), 0), tops_used(anchor_ids.size(), 0);
    for (int i = anchor_count; i < entity_count; ++i) {
        EntitySpec e;
        e.id = "item" + std::to_string(i);
        e.category = category_for(i);
        e.description = "prop";
        const int anchor_index = pick(int(anchor_ids.size()));
        const std::string& anchor = anchor_ids[anchor_index];
        int mode = pick(4);
        if (mode == 0 && mounts_used[anchor_index] >= 2) mode = 2;
        if (mode == 1 && tops_used[anchor_index] >= 4) mode = 2;
        if (mode == 0) {
            // wall-style mount on the anchor's front face, hung high enough
            // to clear every floor-standing entity
            ++mounts_used[anchor_index];
            e.kind = EntityKind::non_anchor;
            e.name = "hanging prop " + std::to_string(i);
            e.dims = Dims{uniform(20, 50), uniform(3, 8), uniform(15, 30)};
            PlacementRelation rel;
            rel.mode = RelationMode::on_surface;
            rel.face = SurfaceFace::front;
            rel.mount_height = 150;
            e.relation = rel;
            e.anchor_ref = anchor;
        } else if (mode == 1) {
            ++tops_used[anchor_index];
            e.kind = EntityKind::non_anchor;
            e.name = "tabletop prop " + std::to_string(i);
            e.dims = Dims{uniform(8, 30), uniform(8, 30), uniform(8, 30)};
            PlacementRelation rel;
            rel.mode = RelationMode::on_top;
            e.relation = rel;
            e.anchor_ref = anchor;
        } else if (mode == 2) {
            e.kind = EntityKind::non_anchor;
            e.name = "floor prop " + std::to_string(i);
            e.dims = Dims{uniform(20, 60), uniform(20, 60), uniform(30, 90)};
            PlacementRelation rel;
            rel.mode = RelationMode::on_floor_near;
            e.relation = rel;
            e.anchor_ref = anchor;
        } else {
            e.kind = EntityKind::ornament;
            e.name = "ornament " + std::to_string(i);
            e.dims = Dims{uniform(15, 45), uniform(15, 45), uniform(20, 80)};
            PlacementRelation rel;
            rel.mode = RelationMode::on_floor_near;
            e.relation = rel;
        }
        scene.entities.push_back(std::move(e));
    }

    const int request_count = 1 + pick(3);
    for (int i = 0; i < request_count; ++i)
        scene.background_requests.push_back(
            {"backdrop" + std::to_string(i), uniform(100, 220), uniform(100, 220)});
    return scene;
}

inline stage::Aabb random_int_box(std::mt19937_64& rng, int lo, int hi, int min_extent = 1,
                                  int max_extent = 0) {
    if (max_extent <= 0) max_extent = hi - lo;
    auto coord = [&](int a, int b) { return a + int(rng() % uint64_t(b - a + 1)); };
    stage::Aabb b;
    int x0 = coord(lo, hi - min_extent), y0 = coord(lo, hi - min_extent),
        h0 = coord(lo, hi - min_extent);
    b.x0 = x0;
    b.y0 = y0;
    b.h0 = h0;
    b.x1 = coord(x0 + min_extent, std::min(hi, x0 + max_extent));
    b.y1 = coord(y0 + min_extent, std::min(hi, y0 + max_extent));
    b.h1 = coord(h0 + min_extent, std::min(hi, h0 + max_extent));
    return b;
}

} // namespace fixtures
