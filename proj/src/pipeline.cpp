#include "stage/pipeline.hpp"

#include "stage/background.hpp"
#include "stage/errors.hpp"
#include "stage/metrics.hpp"
#include "stage/placement.hpp"
#include "stage/projection.hpp"
#include "stage/sha256.hpp"
#include "stage/svg_render.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace stage {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string serialize_manifest(const PipelineResult& result) {
    json j;
    j["format"] = "manifest/1";
    j["artifacts"] = json::array();
    for (const auto& a : result.artifacts)
        j["artifacts"].push_back({{"name", a.name}, {"file", a.file}, {"sha256", a.sha256}});
    j["status"] = result.failed ? "failed" : "ok";
    if (result.failed) j["failure"] = result.failure;
    return j.dump(2) + "\n";
}

PipelineResult run_pipeline(const SceneSpec& scene, const PipelineConfig& cfg,
                            const std::string& out_dir,
                            const std::optional<GroundTruthLayout>& ground_truth) {
    fs::create_directories(out_dir);
    PipelineResult result;

    auto emit = [&](const std::string& name, const std::string& file,
                    const std::string& content) {
        write_file((fs::path(out_dir) / file).string(), content);
        result.artifacts.push_back({name, file, sha256_hex(content)});
    };

    try {
        StageLayout layout = place_scene(scene, cfg.stage, cfg.placement);
        emit("layout", "layout.json", serialize_layout(layout));

        auto occlusions = occlusion_union(layout, cfg.stage);
        emit("occlusions", "occlusions.json", serialize_occlusions(occlusions));

        BackgroundOptions bg_options{cfg.placement.cell_size};
        auto wall_boxes =
            allocate_background(scene.background_requests, occlusions, cfg.stage, bg_options);
        auto bg_spec = emit_background_spec(scene.imagery, wall_boxes, cfg.stage);
        emit("background", "background.json", serialize_background_spec(bg_spec));

        if (ground_truth) {
            StageInput input;
            input.stage_id = layout.stage_id;
            for (const auto& p : layout.entities) {
                input.boxes.push_back(p.box);
                input.categories.push_back(p.spec.category);
            }
            std::vector<Aabb> gt_boxes;
            for (const auto& e : ground_truth->entities) gt_boxes.push_back(e.box);
            input.ground_truth = gt_boxes;
            auto report = build_report({input}, cfg.stage, cfg.iwg_mode);
            emit("metrics", "metrics.json", serialize_report(report));
        }

        emit("render_top", "render_top.svg", render_svg(layout, RenderMode::top));
        emit("render_front", "render_front.svg",
             render_svg(layout, RenderMode::front, occlusions));
    } catch (const SchemaError& e) {
        result.failed = true;
        result.failure = e.what();
        result.exit_code = 1;
    } catch (const SyntaxError& e) {
        result.failed = true;
        result.failure = e.what();
        result.exit_code = 1;
    } catch (const IoError& e) {
        result.failed = true;
        result.failure = e.what();
        result.exit_code = 3;
    } catch (const StageError& e) {
        // placement, space, fit, bounds, degenerate
        result.failed = true;
        result.failure = e.what();
        result.exit_code = 2;
    }

    write_file((fs::path(out_dir) / "manifest.json").string(), serialize_manifest(result));
    return result;
}

} // namespace stage
