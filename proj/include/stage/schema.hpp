#pragma once

#include "stage/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stage {

enum class EntityKind { anchor, non_anchor, ornament };
enum class Facing { toward_audience, away, left, right };
enum class RelationMode { on_floor_near, on_surface, on_top };
enum class SurfaceFace { front, left, right };

const char* to_string(EntityKind k);
const char* to_string(Facing f);
const char* to_string(RelationMode m);
const char* to_string(SurfaceFace f);

struct PlacementRelation {
    RelationMode mode = RelationMode::on_floor_near;
    std::optional<SurfaceFace> face;          // on_surface only
    std::optional<double> mount_height;       // on_surface only; center height, cm
};

struct Dims {
    double length = 0, width = 0, height = 0; // cm
};

struct EntitySpec {
    std::string id;
    std::string name;
    std::string category;
    EntityKind kind = EntityKind::anchor;
    std::string description;
    std::optional<Dims> dims;                 // non-anchors and ornaments
    std::optional<Aabb> anchor_box;           // anchors
    std::optional<PlacementRelation> relation;
    std::optional<std::string> anchor_ref;    // parent anchor id
    Facing facing = Facing::toward_audience;
};

struct BackgroundRequest {
    std::string label;
    double width = 0, height = 0; // cm
};

struct SceneSpec {
    std::string title;
    std::string imagery;
    std::vector<EntitySpec> entities;
    std::vector<BackgroundRequest> background_requests;
};

struct GroundTruthEntity {
    std::string category;
    Aabb box;
};

struct GroundTruthLayout {
    std::string stage_id;
    std::vector<GroundTruthEntity> entities;
};

// Parses the stagelayout/1 scene-spec format (see docs/formats.md).
// Throws SyntaxError (with line/column) or SchemaError (naming the entity).
SceneSpec parse_scene_spec(const std::string& text);
std::string serialize_scene_spec(const SceneSpec& scene);

// Parses the StagePro-style ground-truth layout format. Entity counts outside
// 1..21 produce warnings (appended to `warnings` when given), never errors.
GroundTruthLayout parse_ground_truth(const std::string& text,
                                     std::vector<std::string>* warnings = nullptr);
std::string serialize_ground_truth(const GroundTruthLayout& layout);

enum class FileStatus { pass, warn, fail };

struct FileResult {
    std::string path;
    FileStatus status = FileStatus::pass;
    std::vector<std::string> messages;
};

struct ValidationReport {
    std::vector<FileResult> files;
    bool any_failure() const;
};

// Lints every regular file in `directory` as a scene spec or ground-truth
// layout (selected by the file's `format` field). Unreadable files are
// reported per file and do not abort the scan.
ValidationReport validate_corpus(const std::string& directory);

} // namespace stage
