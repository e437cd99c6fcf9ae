#include "stage/schema.hpp"

#include "stage/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace stage {

const char* to_string(EntityKind k) {
    switch (k) {
        case EntityKind::anchor: return "anchor";
        case EntityKind::non_anchor: return "non_anchor";
        case EntityKind::ornament: return "ornament";
    }
    return "?";
}

const char* to_string(Facing f) {
    switch (f) {
        case Facing::toward_audience: return "toward_audience";
        case Facing::away: return "away";
        case Facing::left: return "left";
        case Facing::right: return "right";
    }
    return "?";
}

const char* to_string(RelationMode m) {
    switch (m) {
        case RelationMode::on_floor_near: return "on_floor_near";
        case RelationMode::on_surface: return "on_surface";
        case RelationMode::on_top: return "on_top";
    }
    return "?";
}

const char* to_string(SurfaceFace f) {
    switch (f) {
        case SurfaceFace::front: return "front";
        case SurfaceFace::left: return "left";
        case SurfaceFace::right: return "right";
    }
    return "?";
}

namespace {

// nlohmann reports a byte offset; translate it to line/column for messages.
[[noreturn]] void rethrow_syntax(const json::parse_error& e, const std::string& text) {
    size_t line = 1, col = 1;
    size_t limit = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (size_t i = 0; i < limit; ++i) {
        if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
    std::ostringstream msg;
    msg << "line " << line << ", column " << col << ": " << e.what();
    throw SyntaxError(msg.str());
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        rethrow_syntax(e, text);
    }
}

double require_number(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number())
        throw SchemaError(ctx + ": missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

std::string require_string(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError(ctx + ": missing or non-string field '" + key + "'");
    return j[key].get<std::string>();
}

std::array<double, 2> pair_field(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
        !j[key][0].is_number() || !j[key][1].is_number())
        throw SchemaError(ctx + ": field '" + key + "' must be a two-number array");
    return {j[key][0].get<double>(), j[key][1].get<double>()};
}

Aabb box_from_corners(const json& j, const std::string& ctx) {
    auto left = pair_field(j, "left", ctx);
    auto right = pair_field(j, "right", ctx);
    auto h = pair_field(j, "h", ctx);
    Aabb box{left[0], left[1], right[0], right[1], h[0], h[1]};
    if (box.x0 >= box.x1) throw SchemaError(ctx + ": x0 < x1 violated");
    if (box.y0 >= box.y1) throw SchemaError(ctx + ": y0 < y1 violated");
    if (box.h0 >= box.h1) throw SchemaError(ctx + ": h0 < h1 violated");
    if (!box.valid()) throw SchemaError(ctx + ": non-finite box coordinates");
    return box;
}

json box_to_corners(const Aabb& b) {
    return json{{"left", {b.x0, b.y0}}, {"right", {b.x1, b.y1}}, {"h", {b.h0, b.h1}}};
}

EntityKind parse_kind(const std::string& s, const std::string& ctx) {
    if (s == "anchor") return EntityKind::anchor;
    if (s == "non_anchor") return EntityKind::non_anchor;
    if (s == "ornament") return EntityKind::ornament;
    throw SchemaError(ctx + ": unknown kind '" + s + "'");
}

Facing parse_facing(const std::string& s, const std::string& ctx) {
    if (s == "toward_audience") return Facing::toward_audience;
    if (s == "away") return Facing::away;
    if (s == "left") return Facing::left;
    if (s == "right") return Facing::right;
    throw SchemaError(ctx + ": unknown facing '" + s + "'");
}

RelationMode parse_mode(const std::string& s, const std::string& ctx) {
    if (s == "on_floor_near") return RelationMode::on_floor_near;
    if (s == "on_surface") return RelationMode::on_surface;
    if (s == "on_top") return RelationMode::on_top;
    throw SchemaError(ctx + ": unknown relation mode '" + s + "'");
}

SurfaceFace parse_face(const std::string& s, const std::string& ctx) {
    if (s == "front") return SurfaceFace::front;
    if (s == "left") return SurfaceFace::left;
    if (s == "right") return SurfaceFace::right;
    throw SchemaError(ctx + ": unknown face '" + s + "'");
}

EntitySpec parse_entity(const json& j, size_t index) {
    std::string ctx = "entity " + std::to_string(index);
    EntitySpec e;
    e.id = require_string(j, "id", ctx);
    ctx = "entity '" + e.id + "'";
    e.name = require_string(j, "name", ctx);
    e.category = require_string(j, "category", ctx);
    e.kind = parse_kind(require_string(j, "kind", ctx), ctx);
    if (j.contains("description")) e.description = require_string(j, "description", ctx);
    if (j.contains("facing")) e.facing = parse_facing(require_string(j, "facing", ctx), ctx);

    if (j.contains("dims")) {
        const auto& d = j["dims"];
        if (!d.is_array() || d.size() != 3 || !d[0].is_number() || !d[1].is_number() ||
            !d[2].is_number())
            throw SchemaError(ctx + ": dims must be [length, width, height]");
        e.dims = Dims{d[0].get<double>(), d[1].get<double>(), d[2].get<double>()};
    }
    if (j.contains("anchor_box"))
        e.anchor_box = box_from_corners(j["anchor_box"], ctx + " anchor_box");
    if (j.contains("anchor_ref"))
        e.anchor_ref = require_string(j, "anchor_ref", ctx);
    if (j.contains("relation")) {
        const auto& r = j["relation"];
        PlacementRelation rel;
        rel.mode = parse_mode(require_string(r, "mode", ctx + " relation"), ctx);
        if (r.contains("face"))
            rel.face = parse_face(require_string(r, "face", ctx + " relation"), ctx);
        if (r.contains("mount_height"))
            rel.mount_height = require_number(r, "mount_height", ctx + " relation");
        e.relation = rel;
    }

    // kind-dependent invariants
    if (e.kind == EntityKind::anchor) {
        if (!e.anchor_box) throw SchemaError(ctx + ": anchor_box required for anchor");
        if (e.dims) throw SchemaError(ctx + ": dims not allowed for anchor");
        if (e.relation) throw SchemaError(ctx + ": relation not allowed for anchor");
    } else {
        const char* kind = to_string(e.kind);
        if (!e.dims)
            throw SchemaError(ctx + ": dims required for " + std::string(kind));
        if (!(e.dims->length > 0 && e.dims->width > 0 && e.dims->height > 0))
            throw SchemaError(ctx + ": dims extents must be positive");
        if (!e.relation)
            throw SchemaError(ctx + ": relation required for " + std::string(kind));
        if (e.anchor_box)
            throw SchemaError(ctx + ": anchor_box not allowed for " + std::string(kind));
    }
    if (e.relation) {
        const auto& r = *e.relation;
        if (r.mode == RelationMode::on_surface) {
            if (!r.face) throw SchemaError(ctx + ": face required for on_surface");
            if (!r.mount_height || *r.mount_height < 0)
                throw SchemaError(ctx + ": mount_height required and >= 0 for on_surface");
        } else {
            if (r.face) throw SchemaError(ctx + ": face only valid for on_surface");
            if (r.mount_height)
                throw SchemaError(ctx + ": mount_height only valid for on_surface");
        }
    }
    return e;
}

} // namespace

SceneSpec parse_scene_spec(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw SchemaError("scene spec root must be an object");
    if (!j.contains("format") || j["format"] != "stagelayout/1")
        throw SchemaError("scene spec: expected format \"stagelayout/1\"");

    SceneSpec scene;
    scene.title = require_string(j, "title", "scene");
    if (j.contains("imagery")) scene.imagery = require_string(j, "imagery", "scene");
    if (!j.contains("entities") || !j["entities"].is_array())
        throw SchemaError("scene: 'entities' must be an array");

    std::set<std::string> ids;
    size_t index = 0;
    for (const auto& je : j["entities"]) {
        EntitySpec e = parse_entity(je, index++);
        if (!ids.insert(e.id).second)
            throw SchemaError("entity '" + e.id + "': duplicate id");
        scene.entities.push_back(std::move(e));
    }
    if (scene.entities.empty())
        throw SchemaError("scene: at least one entity required");

    // anchor_ref targets must exist and be anchors
    for (const auto& e : scene.entities) {
        if (!e.anchor_ref) continue;
        auto it = std::find_if(scene.entities.begin(), scene.entities.end(),
                               [&](const EntitySpec& o) { return o.id == *e.anchor_ref; });
        if (it == scene.entities.end())
            throw SchemaError("entity '" + e.id + "': anchor_ref '" + *e.anchor_ref +
                              "' names no entity");
        if (it->kind != EntityKind::anchor)
            throw SchemaError("entity '" + e.id + "': anchor_ref '" + *e.anchor_ref +
                              "' is not an anchor");
    }

    if (j.contains("background_requests")) {
        if (!j["background_requests"].is_array())
            throw SchemaError("scene: 'background_requests' must be an array");
        for (const auto& jr : j["background_requests"]) {
            BackgroundRequest r;
            r.label = require_string(jr, "label", "background request");
            r.width = require_number(jr, "width", "background request '" + r.label + "'");
            r.height = require_number(jr, "height", "background request '" + r.label + "'");
            if (!(r.width > 0 && r.height > 0))
                throw SchemaError("background request '" + r.label +
                                  "': width and height must be positive");
            scene.background_requests.push_back(std::move(r));
        }
    }
    return scene;
}

std::string serialize_scene_spec(const SceneSpec& scene) {
    json j;
    j["format"] = "stagelayout/1";
    j["title"] = scene.title;
    j["imagery"] = scene.imagery;
    j["entities"] = json::array();
    for (const auto& e : scene.entities) {
        json je;
        je["id"] = e.id;
        je["name"] = e.name;
        je["category"] = e.category;
        je["kind"] = to_string(e.kind);
        je["description"] = e.description;
        je["facing"] = to_string(e.facing);
        if (e.dims) je["dims"] = {e.dims->length, e.dims->width, e.dims->height};
        if (e.anchor_box) je["anchor_box"] = box_to_corners(*e.anchor_box);
        if (e.anchor_ref) je["anchor_ref"] = *e.anchor_ref;
        if (e.relation) {
            json jr;
            jr["mode"] = to_string(e.relation->mode);
            if (e.relation->face) jr["face"] = to_string(*e.relation->face);
            if (e.relation->mount_height) jr["mount_height"] = *e.relation->mount_height;
            je["relation"] = jr;
        }
        j["entities"].push_back(std::move(je));
    }
    j["background_requests"] = json::array();
    for (const auto& r : scene.background_requests)
        j["background_requests"].push_back(
            {{"label", r.label}, {"width", r.width}, {"height", r.height}});
    return j.dump(2) + "\n";
}

GroundTruthLayout parse_ground_truth(const std::string& text,
                                     std::vector<std::string>* warnings) {
    json j = parse_json(text);
    if (!j.is_object()) throw SchemaError("ground truth root must be an object");
    if (!j.contains("format") || j["format"] != "stagepro/1")
        throw SchemaError("ground truth: expected format \"stagepro/1\"");

    GroundTruthLayout layout;
    layout.stage_id = require_string(j, "stage_id", "ground truth");
    if (!j.contains("entities") || !j["entities"].is_array())
        throw SchemaError("ground truth: 'entities' must be an array");
    size_t index = 0;
    for (const auto& je : j["entities"]) {
        std::string ctx = "ground truth entity " + std::to_string(index++);
        GroundTruthEntity e;
        e.category = require_string(je, "category", ctx);
        e.box = box_from_corners(je, ctx);
        layout.entities.push_back(std::move(e));
    }
    if (layout.entities.empty())
        throw SchemaError("ground truth: at least one entity required");
    if (warnings && layout.entities.size() > 21)
        warnings->push_back("entity count " + std::to_string(layout.entities.size()) +
                            " outside dataset range 1-21");
    return layout;
}

std::string serialize_ground_truth(const GroundTruthLayout& layout) {
    json j;
    j["format"] = "stagepro/1";
    j["stage_id"] = layout.stage_id;
    j["entities"] = json::array();
    for (const auto& e : layout.entities) {
        json je = box_to_corners(e.box);
        je["category"] = e.category;
        j["entities"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

bool ValidationReport::any_failure() const {
    return std::any_of(files.begin(), files.end(), [](const FileResult& f) {
        return f.status == FileStatus::fail;
    });
}

ValidationReport validate_corpus(const std::string& directory) {
    if (!fs::is_directory(directory))
        throw IoError("not a directory: " + directory);

    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(directory))
        if (entry.is_regular_file()) paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());

    ValidationReport report;
    for (const auto& path : paths) {
        FileResult result;
        result.path = path.string();
        try {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw IoError("unreadable file");
            std::stringstream buf;
            buf << in.rdbuf();
            const std::string text = buf.str();

            // dispatch on the format field
            json j = parse_json(text);
            std::string format = j.is_object() && j.contains("format") && j["format"].is_string()
                                     ? j["format"].get<std::string>()
                                     : "";
            std::vector<std::string> warnings;
            if (format == "stagelayout/1") {
                parse_scene_spec(text);
            } else if (format == "stagepro/1") {
                parse_ground_truth(text, &warnings);
            } else {
                throw SchemaError("unknown or missing format field");
            }
            if (!warnings.empty()) {
                result.status = FileStatus::warn;
                result.messages = std::move(warnings);
            }
        } catch (const StageError& e) {
            result.status = FileStatus::fail;
            result.messages.push_back(e.what());
        }
        report.files.push_back(std::move(result));
    }
    return report;
}

} // namespace stage
