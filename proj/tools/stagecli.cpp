#include "stage/background.hpp"
#include "stage/config.hpp"
#include "stage/errors.hpp"
#include "stage/metrics.hpp"
#include "stage/pipeline.hpp"
#include "stage/placement.hpp"
#include "stage/projection.hpp"
#include "stage/retrieval.hpp"
#include "stage/schema.hpp"
#include "stage/svg_render.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace stage;

namespace {

constexpr int kExitSchema = 1;
constexpr int kExitPlacement = 2;
constexpr int kExitIo = 3;

struct GlobalArgs {
    std::string config_path;
    std::optional<uint64_t> seed;
};

PipelineConfig resolve_config(const GlobalArgs& args) {
    PipelineConfig cfg;
    std::string path = args.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("STAGELAYOUT_CONFIG")) path = env;
    }
    if (!path.empty()) cfg = load_pipeline_config(path);
    if (args.seed) cfg.seed = *args.seed;
    return cfg;
}

int run_place(const GlobalArgs& global, const std::string& scene_path,
              const std::string& out_path) {
    PipelineConfig cfg = resolve_config(global);
    SceneSpec scene = parse_scene_spec(read_file(scene_path));
    StageLayout layout = place_scene(scene, cfg.stage, cfg.placement);
    write_file(out_path, serialize_layout(layout));
    std::cerr << "placed " << layout.entities.size() << " entities -> " << out_path << "\n";
    return 0;
}

int run_project(const GlobalArgs& global, const std::string& layout_path,
                const std::string& out_path, const std::string& svg_path) {
    PipelineConfig cfg = resolve_config(global);
    StageLayout layout = parse_layout(read_file(layout_path), cfg.stage);
    auto occlusions = occlusion_union(layout, cfg.stage);
    write_file(out_path, serialize_occlusions(occlusions));
    if (!svg_path.empty())
        write_file(svg_path, render_svg(layout, RenderMode::front, occlusions));
    std::cerr << "projected " << occlusions.size() << " occlusion boxes -> " << out_path << "\n";
    return 0;
}

int run_background(const GlobalArgs& global, const std::string& scene_path,
                   const std::string& occlusions_path, const std::string& out_path) {
    PipelineConfig cfg = resolve_config(global);
    SceneSpec scene = parse_scene_spec(read_file(scene_path));
    auto occlusions = parse_occlusions(read_file(occlusions_path));
    BackgroundOptions options{cfg.placement.cell_size};
    auto boxes = allocate_background(scene.background_requests, occlusions, cfg.stage, options);
    auto spec = emit_background_spec(scene.imagery, boxes, cfg.stage);
    write_file(out_path, serialize_background_spec(spec));
    std::cerr << "allocated " << boxes.size() << " background regions -> " << out_path << "\n";
    return 0;
}

int run_retrieve(const GlobalArgs& global, const std::string& index_path,
                 const std::string& query) {
    PipelineConfig cfg = resolve_config(global);
    auto index = parse_asset_index(read_file(index_path));
    StubProvider provider;
    auto scored = score_assets(query, index, provider, cfg.retrieval);
    auto candidates = candidate_set(scored, cfg.retrieval);
    auto chosen = select_asset(scored, cfg.retrieval, cfg.seed);
    for (const auto& id : candidates) std::cout << "candidate\t" << id << "\n";
    if (chosen)
        std::cout << "selected\t" << *chosen << "\n";
    else
        std::cout << "selected\t-\n";
    return 0;
}

int run_metrics(const GlobalArgs& global, const std::string& layout_dir,
                const std::string& gt_dir, const std::string& out_path, bool print_table) {
    PipelineConfig cfg = resolve_config(global);
    if (!fs::is_directory(layout_dir)) throw IoError("not a directory: " + layout_dir);

    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(layout_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());

    std::vector<StageInput> stages;
    for (const auto& path : paths) {
        StageLayout layout;
        try {
            layout = parse_layout(read_file(path.string()), cfg.stage);
        } catch (const StageError& e) {
            throw SchemaError("stage '" + path.filename().string() + "': " + e.what());
        }
        StageInput input;
        input.stage_id = layout.stage_id;
        for (const auto& p : layout.entities) {
            input.boxes.push_back(p.box);
            input.categories.push_back(p.spec.category);
        }
        if (!gt_dir.empty()) {
            fs::path gt_path = fs::path(gt_dir) / path.filename();
            if (fs::exists(gt_path)) {
                auto gt = parse_ground_truth(read_file(gt_path.string()));
                std::vector<Aabb> gt_boxes;
                for (const auto& e : gt.entities) gt_boxes.push_back(e.box);
                input.ground_truth = gt_boxes;
            }
        }
        stages.push_back(std::move(input));
    }

    auto report = build_report(stages, cfg.stage, cfg.iwg_mode);
    if (!out_path.empty()) write_file(out_path, serialize_report(report));
    if (print_table || out_path.empty()) std::cout << format_report_table(report);
    return 0;
}

int run_validate(const std::string& directory) {
    auto report = validate_corpus(directory);
    for (const auto& file : report.files) {
        const char* status = file.status == FileStatus::pass   ? "pass"
                             : file.status == FileStatus::warn ? "warn"
                                                               : "fail";
        std::cout << status << "\t" << file.path;
        for (const auto& msg : file.messages) std::cout << "\t" << msg;
        std::cout << "\n";
    }
    return report.any_failure() ? kExitSchema : 0;
}

int run_render(const GlobalArgs& global, const std::string& layout_path,
               const std::string& mode, const std::string& occlusions_path,
               const std::string& out_path) {
    PipelineConfig cfg = resolve_config(global);
    StageLayout layout = parse_layout(read_file(layout_path), cfg.stage);
    std::vector<OcclusionBox> occlusions;
    if (!occlusions_path.empty()) occlusions = parse_occlusions(read_file(occlusions_path));
    RenderMode render_mode = mode == "front" ? RenderMode::front : RenderMode::top;
    write_file(out_path, render_svg(layout, render_mode, occlusions));
    return 0;
}

int run_full_pipeline(const GlobalArgs& global, const std::string& scene_path,
                      const std::string& gt_path, const std::string& out_dir) {
    PipelineConfig cfg = resolve_config(global);
    SceneSpec scene = parse_scene_spec(read_file(scene_path));
    std::optional<GroundTruthLayout> gt;
    if (!gt_path.empty()) gt = parse_ground_truth(read_file(gt_path));
    std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    auto result = run_pipeline(scene, cfg, dir, gt);
    if (result.failed) {
        std::cerr << "pipeline failed: " << result.failure << "\n";
        return result.exit_code;
    }
    std::cerr << "wrote " << result.artifacts.size() << " artifacts -> " << dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic stage-layout engine and evaluation toolkit"};
    app.require_subcommand(1);

    GlobalArgs global;
    app.add_option("--config", global.config_path,
                   "Pipeline config file (or STAGELAYOUT_CONFIG)");
    uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Override the config seed");

    std::string scene_path, layout_path, occ_path, gt_path, index_path, query, mode = "top";
    std::string out_path, svg_path, dir_path;
    bool table = false;

    auto* place = app.add_subcommand("place", "Place a scene spec into a concrete layout");
    place->add_option("scene", scene_path, "Scene spec file")->required();
    place->add_option("--out", out_path, "Layout output file")->required();

    auto* project = app.add_subcommand("project", "Compute audience occlusion boxes");
    project->add_option("layout", layout_path, "Placed layout file")->required();
    project->add_option("--out", out_path, "Occlusion output file")->required();
    project->add_option("--svg", svg_path, "Optional front elevation overlay");

    auto* background = app.add_subcommand("background", "Allocate background wall regions");
    background->add_option("scene", scene_path, "Scene spec file")->required();
    background->add_option("occlusions", occ_path, "Occlusion file from 'project'")->required();
    background->add_option("--out", out_path, "Background spec output file")->required();

    auto* retrieve = app.add_subcommand("retrieve", "Score and select an asset");
    retrieve->add_option("index", index_path, "Asset index file")->required();
    retrieve->add_option("--query", query, "Name + description text")->required();

    auto* metrics = app.add_subcommand("metrics", "Evaluate layouts");
    metrics->add_option("layouts", dir_path, "Directory of placed layout files")->required();
    metrics->add_option("--gt", gt_path, "Directory of ground-truth files");
    metrics->add_option("--out", out_path, "Machine-readable report file");
    metrics->add_flag("--table", table, "Print the aligned table");

    auto* validate = app.add_subcommand("validate", "Lint a corpus directory");
    validate->add_option("dir", dir_path, "Corpus directory")->required();

    auto* render = app.add_subcommand("render", "Render a layout to SVG");
    render->add_option("layout", layout_path, "Placed layout file")->required();
    render->add_option("--mode", mode, "top or front")
        ->check(CLI::IsMember({"top", "front"}));
    render->add_option("--occlusions", occ_path, "Occlusion file to overlay (front mode)");
    render->add_option("--out", out_path, "SVG output file")->required();

    auto* pipeline = app.add_subcommand("pipeline", "Run the full pipeline on one scene");
    pipeline->add_option("scene", scene_path, "Scene spec file")->required();
    pipeline->add_option("--gt", gt_path, "Ground-truth layout file");
    pipeline->add_option("--out", out_path, "Output directory");

    CLI11_PARSE(app, argc, argv);
    if (!seed_opt->empty()) global.seed = seed_value;

    try {
        if (place->parsed()) return run_place(global, scene_path, out_path);
        if (project->parsed()) return run_project(global, layout_path, out_path, svg_path);
        if (background->parsed())
            return run_background(global, scene_path, occ_path, out_path);
        if (retrieve->parsed()) return run_retrieve(global, index_path, query);
        if (metrics->parsed())
            return run_metrics(global, dir_path, gt_path, out_path, table);
        if (validate->parsed()) return run_validate(dir_path);
        if (render->parsed())
            return run_render(global, layout_path, mode, occ_path, out_path);
        if (pipeline->parsed())
            return run_full_pipeline(global, scene_path, gt_path, out_path);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPlacement;
    }
    return 0;
}
