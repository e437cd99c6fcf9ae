#include "stage/placement.hpp"

#include "stage/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

using nlohmann::json;

namespace stage {

namespace {

// Grid sized by rounding the extent up to whole cells; when the extent is not
// an exact multiple, the partial boundary row/column is pre-marked so
// placements never spill past the real extent.
std::unique_ptr<CollisionGrid> make_grid(double extent_u, double extent_v, double cell,
                                         bool naive) {
    const int cells_u = int(std::ceil(extent_u / cell - 1e-9));
    const int cells_v = int(std::ceil(extent_v / cell - 1e-9));
    auto grid = std::make_unique<CollisionGrid>(std::max(1, cells_u), std::max(1, cells_v),
                                                naive);
    if (cells_u * cell > extent_u + 1e-9 && cells_u > 1)
        grid->mark_rect({cells_u - 1, 0, 1, cells_v});
    if (cells_v * cell > extent_v + 1e-9 && cells_v > 1)
        grid->mark_rect({0, cells_v - 1, cells_u, 1});
    return grid;
}

bool within_stage(const Aabb& b, const StageConfig& cfg) {
    const double n = cfg.stage_size;
    return b.x0 >= 0 && b.y0 >= 0 && b.h0 >= 0 && b.x1 <= n && b.y1 <= n && b.h1 <= n;
}

} // namespace

PlacementState::PlacementState(const StageConfig& cfg, const PlacementOptions& options)
    : cfg_(cfg), options_(options) {
    cfg_.validate();
    if (!(options_.cell_size > 0)) throw SchemaError("cell_size must be positive");
    floor_ = make_grid(cfg_.stage_size, cfg_.stage_size, options_.cell_size,
                       options_.naive_grid);
}

int PlacementState::to_cells(double cm) const {
    return std::max(1, int(std::ceil(cm / options_.cell_size - 1e-9)));
}

CellRect PlacementState::footprint_cells(const Aabb& box) const {
    const double cell = options_.cell_size;
    int x0 = std::max(0, int(std::floor(box.x0 / cell + 1e-9)));
    int y0 = std::max(0, int(std::floor(box.y0 / cell + 1e-9)));
    int x1 = std::min(floor_->width(), int(std::ceil(box.x1 / cell - 1e-9)));
    int y1 = std::min(floor_->height(), int(std::ceil(box.y1 / cell - 1e-9)));
    return {x0, y0, std::max(1, x1 - x0), std::max(1, y1 - y0)};
}

void PlacementState::register_anchor(const std::string& id, const Aabb& box) {
    SurfaceMaps maps;
    maps.box = box;
    const double L = box.x1 - box.x0, W = box.y1 - box.y0, H = box.h1 - box.h0;
    const double cell = options_.cell_size;
    const bool naive = options_.naive_grid;
    maps.front = make_grid(L, H, cell, naive);
    maps.left = make_grid(W, H, cell, naive);
    maps.right = make_grid(W, H, cell, naive);
    maps.top = make_grid(L, W, cell, naive);
    anchors_.emplace(id, std::move(maps));
    floor_->mark_rect(footprint_cells(box));
}

PlacementState::SurfaceMaps& PlacementState::surfaces_for(const std::string& anchor_id) {
    auto it = anchors_.find(anchor_id);
    if (it == anchors_.end())
        throw PlacementError("anchor '" + anchor_id + "' has not been placed");
    return it->second;
}

const Aabb& PlacementState::anchor_box(const std::string& anchor_id) const {
    auto it = anchors_.find(anchor_id);
    if (it == anchors_.end())
        throw PlacementError("anchor '" + anchor_id + "' has not been placed");
    return it->second.box;
}

std::vector<PlacedEntity> PlacementState::validate_anchors(
    const std::vector<EntitySpec>& specs) {
    std::vector<PlacedEntity> placed;
    std::vector<std::string> violations;
    const double cell = options_.cell_size;

    for (const auto& spec : specs) {
        if (spec.kind != EntityKind::anchor)
            throw PlacementError("entity '" + spec.id + "' is not an anchor");
        const Aabb& box = *spec.anchor_box;

        std::string problem;
        if (!within_stage(box, cfg_)) {
            std::ostringstream msg;
            msg << "out of bounds";
            if (box.x0 < 0) msg << ": x0 < 0";
            else if (box.y0 < 0) msg << ": y0 < 0";
            else if (box.h0 < 0) msg << ": h0 < 0";
            else if (box.x1 > cfg_.stage_size) msg << ": x1 > " << cfg_.stage_size;
            else if (box.y1 > cfg_.stage_size) msg << ": y1 > " << cfg_.stage_size;
            else if (box.h1 > cfg_.stage_size) msg << ": h1 > " << cfg_.stage_size;
            problem = msg.str();
        } else {
            for (const auto& other : placed) {
                if (intersection_volume(box, other.box).cm3 > 0) {
                    // only the violating anchor is quoted; the partner it hit
                    // is named bare
                    problem = "collides with previously placed anchor " + other.spec.id;
                    break;
                }
            }
        }

        if (problem.empty()) {
            placed.push_back({spec, box, std::nullopt});
            register_anchor(spec.id, box);
            continue;
        }
        if (!options_.repair) {
            violations.push_back("anchor '" + spec.id + "': " + problem);
            continue;
        }

        // repair: re-seat at the nearest free floor position, keeping dims
        // and height range
        const double L = box.x1 - box.x0, W = box.y1 - box.y0;
        if (box.h0 < 0 || box.h1 > cfg_.stage_size)
            throw PlacementError("anchor '" + spec.id +
                                 "': height range outside the stage, cannot re-seat");
        const int w = to_cells(L), h = to_cells(W);
        CellPoint preferred{int(std::llround((box.x0 + box.x1) / 2 / cell)),
                            int(std::llround((box.y0 + box.y1) / 2 / cell))};
        auto pos = floor_->find_free_rect(w, h, preferred);
        if (!pos)
            throw NoSpaceError("anchor '" + spec.id + "': no free floor position to re-seat");
        Aabb seated{pos->x * cell, pos->y * cell, pos->x * cell + L, pos->y * cell + W,
                    box.h0, box.h1};
        placed.push_back({spec, seated, std::nullopt});
        register_anchor(spec.id, seated);
    }

    if (!violations.empty()) {
        std::string msg = "anchor validation failed";
        for (const auto& v : violations) msg += "; " + v;
        throw PlacementError(msg);
    }
    return placed;
}

PlacedEntity PlacementState::place_on_floor_near(
    const EntitySpec& spec, const std::optional<std::string>& anchor_id) {
    const Dims& d = *spec.dims;
    const double cell = options_.cell_size;
    const int w = to_cells(d.length), h = to_cells(d.width);

    CellPoint preferred{floor_->width() / 2, floor_->height() / 2};
    if (anchor_id) {
        const Aabb& a = anchor_box(*anchor_id);
        preferred = {int(std::llround((a.x0 + a.x1) / 2 / cell)),
                     int(std::llround((a.y0 + a.y1) / 2 / cell))};
    }
    auto pos = floor_->find_free_rect(w, h, preferred);
    if (!pos)
        throw NoSpaceError("entity '" + spec.id + "': no free floor rectangle of " +
                           std::to_string(w) + "x" + std::to_string(h) + " cells");
    if (d.height > cfg_.stage_size)
        throw NoSpaceError("entity '" + spec.id + "': taller than the stage");
    floor_->mark_rect({pos->x, pos->y, w, h});
    Aabb box{pos->x * cell, pos->y * cell, pos->x * cell + d.length,
             pos->y * cell + d.width, 0, d.height};
    return {spec, box, std::nullopt};
}

PlacedEntity PlacementState::place_on_surface(const EntitySpec& spec,
                                              const std::string& anchor_id) {
    const Dims& d = *spec.dims;
    const PlacementRelation& rel = *spec.relation;
    SurfaceMaps& maps = surfaces_for(anchor_id);
    const Aabb& a = maps.box;
    const double cell = options_.cell_size;
    const double mount = *rel.mount_height;

    if (mount > a.h1)
        throw BoundsError("entity '" + spec.id + "': mount_height " + std::to_string(mount) +
                          " above anchor top " + std::to_string(a.h1));

    CollisionGrid* grid = nullptr;
    switch (*rel.face) {
        case SurfaceFace::front: grid = maps.front.get(); break;
        case SurfaceFace::left: grid = maps.left.get(); break;
        case SurfaceFace::right: grid = maps.right.get(); break;
    }

    const int w = to_cells(d.length), h = to_cells(d.height);
    const int center_row = int(std::llround((mount - a.h0) / cell));
    auto pos = grid->find_free_rect_at_row(w, h, center_row);
    if (!pos)
        throw NoSpaceError("entity '" + spec.id + "': face " + to_string(*rel.face) +
                           " of anchor '" + anchor_id + "' has no free region");

    const double along = pos->x * cell;         // offset along the face
    const double h0 = a.h0 + pos->y * cell;
    Aabb box;
    switch (*rel.face) {
        case SurfaceFace::front:
            box = {a.x0 + along, a.y0 - d.width, a.x0 + along + d.length, a.y0,
                   h0, h0 + d.height};
            break;
        case SurfaceFace::left:
            box = {a.x0 - d.width, a.y0 + along, a.x0, a.y0 + along + d.length,
                   h0, h0 + d.height};
            break;
        case SurfaceFace::right:
            box = {a.x1, a.y0 + along, a.x1 + d.width, a.y0 + along + d.length,
                   h0, h0 + d.height};
            break;
    }
    if (!within_stage(box, cfg_))
        throw NoSpaceError("entity '" + spec.id + "': protrudes beyond the stage from face " +
                           to_string(*rel.face));
    grid->mark_rect({pos->x, pos->y, w, h});
    return {spec, box, anchor_id};
}

PlacedEntity PlacementState::place_on_top(const EntitySpec& spec,
                                          const std::string& supporter_id) {
    const Dims& d = *spec.dims;
    SurfaceMaps& maps = surfaces_for(supporter_id);
    const Aabb& a = maps.box;
    const double cell = options_.cell_size;

    if (d.length > a.x1 - a.x0 || d.width > a.y1 - a.y0)
        throw FitError("entity '" + spec.id + "': footprint larger than top face of '" +
                       supporter_id + "'");
    if (a.h1 + d.height > cfg_.stage_size)
        throw NoSpaceError("entity '" + spec.id + "': exceeds stage height on top of '" +
                           supporter_id + "'");

    // items tile the top face on a footprint-aligned lattice, so exactly
    // floor(L/l) * floor(W/w) identical items fit before NoSpaceError; the
    // lattice slot nearest the face center is preferred, ties ascending x
    // then y
    const int w = to_cells(d.length), h = to_cells(d.width);
    const int pcx = maps.top->width() / 2, pcy = maps.top->height() / 2;
    std::optional<CellPoint> pos;
    int best = 0;
    for (int j = 0; (j + 1) * h <= maps.top->height() &&
                    a.y0 + j * h * cell + d.width <= a.y1 + 1e-9;
         ++j)
        for (int i = 0; (i + 1) * w <= maps.top->width() &&
                        a.x0 + i * w * cell + d.length <= a.x1 + 1e-9;
             ++i) {
            const CellPoint p{i * w, j * h};
            if (!maps.top->is_free({p.x, p.y, w, h})) continue;
            const int dist = std::max(std::abs(p.x + (w - 1) / 2 - pcx),
                                      std::abs(p.y + (h - 1) / 2 - pcy));
            if (!pos || dist < best ||
                (dist == best && (p.x < pos->x || (p.x == pos->x && p.y < pos->y)))) {
                pos = p;
                best = dist;
            }
        }
    if (!pos)
        throw NoSpaceError("entity '" + spec.id + "': top face of '" + supporter_id +
                           "' has no free region");
    maps.top->mark_rect({pos->x, pos->y, w, h});
    Aabb box{a.x0 + pos->x * cell, a.y0 + pos->y * cell,
             a.x0 + pos->x * cell + d.length, a.y0 + pos->y * cell + d.width,
             a.h1, a.h1 + d.height};
    return {spec, box, supporter_id};
}

StageLayout place_scene(const SceneSpec& scene, const StageConfig& cfg,
                        const PlacementOptions& options) {
    PlacementState state(cfg, options);

    std::vector<EntitySpec> anchors;
    for (const auto& e : scene.entities)
        if (e.kind == EntityKind::anchor) anchors.push_back(e);

    StageLayout layout;
    layout.stage_id = scene.title;
    layout.config = cfg;
    layout.entities = state.validate_anchors(anchors);

    auto place_one = [&](const EntitySpec& e) {
        const RelationMode mode = e.relation->mode;
        if (mode != RelationMode::on_floor_near && !e.anchor_ref)
            throw PlacementError("entity '" + e.id + "': anchor_ref required for " +
                                 std::string(to_string(mode)));
        switch (mode) {
            case RelationMode::on_floor_near:
                return state.place_on_floor_near(e, e.anchor_ref);
            case RelationMode::on_surface:
                return state.place_on_surface(e, *e.anchor_ref);
            case RelationMode::on_top:
                return state.place_on_top(e, *e.anchor_ref);
        }
        throw PlacementError("entity '" + e.id + "': unknown relation mode");
    };

    for (const auto& e : scene.entities)
        if (e.kind == EntityKind::non_anchor) layout.entities.push_back(place_one(e));
    for (const auto& e : scene.entities)
        if (e.kind == EntityKind::ornament) layout.entities.push_back(place_one(e));
    return layout;
}

std::string serialize_layout(const StageLayout& layout) {
    json j;
    j["format"] = "stagelayout-placed/1";
    j["stage_id"] = layout.stage_id;
    j["entities"] = json::array();
    for (const auto& p : layout.entities) {
        json je;
        je["id"] = p.spec.id;
        je["kind"] = to_string(p.spec.kind);
        je["category"] = p.spec.category;
        je["left"] = {p.box.x0, p.box.y0};
        je["right"] = {p.box.x1, p.box.y1};
        je["h"] = {p.box.h0, p.box.h1};
        if (p.supported_by) je["supported_by"] = *p.supported_by;
        j["entities"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

StageLayout parse_layout(const std::string& text, const StageConfig& cfg) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.what());
    }
    if (!j.is_object() || !j.contains("format") || j["format"] != "stagelayout-placed/1")
        throw SchemaError("layout: expected format \"stagelayout-placed/1\"");

    StageLayout layout;
    layout.config = cfg;
    if (!j.contains("stage_id") || !j["stage_id"].is_string())
        throw SchemaError("layout: missing stage_id");
    layout.stage_id = j["stage_id"].get<std::string>();
    if (!j.contains("entities") || !j["entities"].is_array())
        throw SchemaError("layout: 'entities' must be an array");

    size_t index = 0;
    for (const auto& je : j["entities"]) {
        const std::string ctx = "layout entity " + std::to_string(index++);
        PlacedEntity p;
        auto str = [&](const char* key) {
            if (!je.contains(key) || !je[key].is_string())
                throw SchemaError(ctx + ": missing field '" + key + "'");
            return je[key].get<std::string>();
        };
        p.spec.id = str("id");
        p.spec.category = str("category");
        p.spec.name = p.spec.id;
        const std::string kind = str("kind");
        if (kind == "anchor") p.spec.kind = EntityKind::anchor;
        else if (kind == "non_anchor") p.spec.kind = EntityKind::non_anchor;
        else if (kind == "ornament") p.spec.kind = EntityKind::ornament;
        else throw SchemaError(ctx + ": unknown kind '" + kind + "'");
        auto pair = [&](const char* key) -> std::array<double, 2> {
            if (!je.contains(key) || !je[key].is_array() || je[key].size() != 2)
                throw SchemaError(ctx + ": field '" + key + "' must be a two-number array");
            return {je[key][0].get<double>(), je[key][1].get<double>()};
        };
        auto left = pair("left"), right = pair("right"), h = pair("h");
        p.box = {left[0], left[1], right[0], right[1], h[0], h[1]};
        if (!p.box.valid()) throw SchemaError(ctx + ": invalid box extents");
        if (je.contains("supported_by"))
            p.supported_by = je["supported_by"].get<std::string>();
        layout.entities.push_back(std::move(p));
    }
    return layout;
}

} // namespace stage
