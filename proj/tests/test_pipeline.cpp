#include "stage/pipeline.hpp"

#include "stage/errors.hpp"
#include "stage/sha256.hpp"
#include "stage/svg_render.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <filesystem>

using namespace stage;
namespace fs = std::filesystem;

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    // multi-block input
    CHECK(sha256_hex(std::string(200, 'a')) == sha256_hex(std::string(200, 'a')));
}

TEST_CASE("config defaults, overrides and unknown keys") {
    auto cfg = parse_pipeline_config("{}");
    CHECK(cfg.stage.stage_size == 1000);
    CHECK(cfg.retrieval.threshold == 27);
    CHECK(cfg.retrieval.top_k == 10);
    CHECK(cfg.placement.repair); // CLI pipelines repair by default
    CHECK(cfg.placement.cell_size == 1);
    CHECK(cfg.iwg_mode == IwgMode::union_mode);

    cfg = parse_pipeline_config(R"({"stage": {"stage_size": 500}, "seed": 7,
                                    "iwg_mode": "pairwise_sum"})");
    CHECK(cfg.stage.stage_size == 500);
    CHECK(cfg.stage.back_wall_y == 500);
    CHECK(cfg.seed == 7);
    CHECK(cfg.iwg_mode == IwgMode::pairwise_sum);

    CHECK_THROWS_WITH_AS(parse_pipeline_config(R"({"stge": {}})"),
                         doctest::Contains("unknown key"), SchemaError);
    CHECK_THROWS_WITH_AS(parse_pipeline_config(R"({"retrieval": {"topk": 5}})"),
                         doctest::Contains("unknown key"), SchemaError);

    // round-trip through the serializer
    auto again = parse_pipeline_config(serialize_pipeline_config(cfg));
    CHECK(serialize_pipeline_config(again) == serialize_pipeline_config(cfg));
}

TEST_CASE("run_pipeline writes the full artifact set with stable hashes") {
    PipelineConfig cfg;
    SceneSpec scene = fixtures::make_scene(3, 10);
    const fs::path dir1 = fs::temp_directory_path() / "stage_pipe_a";
    const fs::path dir2 = fs::temp_directory_path() / "stage_pipe_b";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    auto r1 = run_pipeline(scene, cfg, dir1.string());
    auto r2 = run_pipeline(scene, cfg, dir2.string());
    CHECK(!r1.failed);
    REQUIRE(r1.artifacts.size() == 5); // layout, occlusions, background, 2 renders
    CHECK(serialize_manifest(r1) == serialize_manifest(r2));
    CHECK(read_file((dir1 / "manifest.json").string()) ==
          read_file((dir2 / "manifest.json").string()));

    for (const auto& artifact : r1.artifacts) {
        const auto content = read_file((dir1 / artifact.file).string());
        CHECK(sha256_hex(content) == artifact.sha256);
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("ground truth adds a metrics artifact") {
    PipelineConfig cfg;
    SceneSpec scene = fixtures::make_scene(4, 6);
    GroundTruthLayout gt;
    gt.stage_id = "gt";
    gt.entities.push_back({"cat0", {100, 100, 300, 300, 0, 150}});

    const fs::path dir = fs::temp_directory_path() / "stage_pipe_gt";
    fs::remove_all(dir);
    auto result = run_pipeline(scene, cfg, dir.string(), gt);
    CHECK(!result.failed);
    REQUIRE(result.artifacts.size() == 6);
    bool has_metrics = false;
    for (const auto& a : result.artifacts) has_metrics |= a.name == "metrics";
    CHECK(has_metrics);
    fs::remove_all(dir);
}

TEST_CASE("failures keep partial artifacts and mark the manifest") {
    PipelineConfig cfg;
    SceneSpec scene = fixtures::make_scene(6, 4);
    // make the background unplaceable: a request wider than the wall fails
    // validation inside allocate_background
    scene.background_requests = {{"impossible", 5000, 100}};

    const fs::path dir = fs::temp_directory_path() / "stage_pipe_fail";
    fs::remove_all(dir);
    auto result = run_pipeline(scene, cfg, dir.string());
    CHECK(result.failed);
    CHECK(fs::exists(dir / "layout.json"));      // earlier stages retained
    CHECK(fs::exists(dir / "occlusions.json"));
    CHECK(!fs::exists(dir / "background.json"));
    const auto manifest = read_file((dir / "manifest.json").string());
    CHECK(manifest.find("\"status\": \"failed\"") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("svg rendering is deterministic and labels every entity") {
    PipelineConfig cfg;
    SceneSpec scene = fixtures::make_scene(12, 4);
    StageLayout layout = place_scene(scene, cfg.stage, cfg.placement);

    const auto top = render_svg(layout, RenderMode::top);
    CHECK(top == render_svg(layout, RenderMode::top));
    for (const auto& p : layout.entities)
        CHECK(top.find(">" + p.spec.id + "<") != std::string::npos);

    StageLayout empty;
    empty.config = cfg.stage;
    const auto blank = render_svg(empty, RenderMode::top);
    CHECK(blank.find("<rect") != std::string::npos); // stage outline only
    CHECK(blank.find("<text") == std::string::npos);
}
