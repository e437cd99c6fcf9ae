#include "stage/config.hpp"

#include "stage/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

using nlohmann::json;

namespace stage {

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw SchemaError("config " + ctx + ": unknown key '" + key + "'");
}

Point3 parse_point(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 3)
        throw SchemaError("config " + ctx + ": expected [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

PipelineConfig parse_pipeline_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.what());
    }
    if (!j.is_object()) throw SchemaError("config root must be an object");
    check_keys(j, {"stage", "placement", "retrieval", "seed", "iwg_mode", "out_dir"}, "root");

    PipelineConfig cfg;
    if (j.contains("stage")) {
        const auto& s = j["stage"];
        check_keys(s,
                   {"stage_size", "back_wall_y", "audience_left", "audience_right",
                    "eye_height", "projection_mode"},
                   "stage");
        if (s.contains("stage_size")) {
            cfg.stage.stage_size = s["stage_size"].get<double>();
            cfg.stage.back_wall_y = cfg.stage.stage_size;
        }
        if (s.contains("back_wall_y")) cfg.stage.back_wall_y = s["back_wall_y"].get<double>();
        if (s.contains("audience_left"))
            cfg.stage.audience_left = parse_point(s["audience_left"], "stage.audience_left");
        if (s.contains("audience_right"))
            cfg.stage.audience_right = parse_point(s["audience_right"], "stage.audience_right");
        if (s.contains("eye_height")) cfg.stage.eye_height = s["eye_height"].get<double>();
        if (s.contains("projection_mode")) {
            const std::string mode = s["projection_mode"].get<std::string>();
            if (mode == "perspective") cfg.stage.projection_mode = ProjectionMode::perspective;
            else if (mode == "orthographic")
                cfg.stage.projection_mode = ProjectionMode::orthographic;
            else throw SchemaError("config stage.projection_mode: unknown mode '" + mode + "'");
        }
        cfg.stage.validate();
    }
    if (j.contains("placement")) {
        const auto& p = j["placement"];
        check_keys(p, {"cell_size", "repair", "naive_grid"}, "placement");
        if (p.contains("cell_size")) cfg.placement.cell_size = p["cell_size"].get<double>();
        if (p.contains("repair")) cfg.placement.repair = p["repair"].get<bool>();
        if (p.contains("naive_grid")) cfg.placement.naive_grid = p["naive_grid"].get<bool>();
        if (!(cfg.placement.cell_size > 0))
            throw SchemaError("config placement.cell_size must be positive");
    }
    if (j.contains("retrieval")) {
        const auto& r = j["retrieval"];
        check_keys(r, {"threshold", "top_k", "image_weight", "text_weight", "threshold_target"},
                   "retrieval");
        if (r.contains("threshold")) cfg.retrieval.threshold = r["threshold"].get<double>();
        if (r.contains("top_k")) cfg.retrieval.top_k = r["top_k"].get<int>();
        if (r.contains("image_weight"))
            cfg.retrieval.image_weight = r["image_weight"].get<double>();
        if (r.contains("text_weight")) cfg.retrieval.text_weight = r["text_weight"].get<double>();
        if (r.contains("threshold_target")) {
            const std::string target = r["threshold_target"].get<std::string>();
            if (target == "combined") cfg.retrieval.threshold_target = ThresholdTarget::combined;
            else if (target == "image") cfg.retrieval.threshold_target = ThresholdTarget::image;
            else
                throw SchemaError("config retrieval.threshold_target: expected 'combined' or 'image'");
        }
        if (cfg.retrieval.top_k <= 0) throw SchemaError("config retrieval.top_k must be positive");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("iwg_mode")) {
        const std::string mode = j["iwg_mode"].get<std::string>();
        if (mode == "union") cfg.iwg_mode = IwgMode::union_mode;
        else if (mode == "pairwise_sum") cfg.iwg_mode = IwgMode::pairwise_sum;
        else throw SchemaError("config iwg_mode: expected 'union' or 'pairwise_sum'");
    }
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    return cfg;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_pipeline_config(buf.str());
}

std::string serialize_pipeline_config(const PipelineConfig& cfg) {
    json j;
    j["stage"] = {
        {"stage_size", cfg.stage.stage_size},
        {"back_wall_y", cfg.stage.back_wall_y},
        {"audience_left",
         {cfg.stage.audience_left.x, cfg.stage.audience_left.y, cfg.stage.audience_left.z}},
        {"audience_right",
         {cfg.stage.audience_right.x, cfg.stage.audience_right.y, cfg.stage.audience_right.z}},
        {"eye_height", cfg.stage.eye_height},
        {"projection_mode",
         cfg.stage.projection_mode == ProjectionMode::perspective ? "perspective"
                                                                  : "orthographic"}};
    j["placement"] = {{"cell_size", cfg.placement.cell_size},
                      {"repair", cfg.placement.repair},
                      {"naive_grid", cfg.placement.naive_grid}};
    j["retrieval"] = {
        {"threshold", cfg.retrieval.threshold},
        {"top_k", cfg.retrieval.top_k},
        {"image_weight", cfg.retrieval.image_weight},
        {"text_weight", cfg.retrieval.text_weight},
        {"threshold_target",
         cfg.retrieval.threshold_target == ThresholdTarget::image ? "image" : "combined"}};
    j["seed"] = cfg.seed;
    j["iwg_mode"] = cfg.iwg_mode == IwgMode::union_mode ? "union" : "pairwise_sum";
    j["out_dir"] = cfg.out_dir;
    return j.dump(2) + "\n";
}

} // namespace stage
