#pragma once

#include "stage/geometry.hpp"
#include "stage/metrics.hpp"
#include "stage/placement.hpp"
#include "stage/retrieval.hpp"

#include <cstdint>
#include <string>

namespace stage {

// One config file drives the whole pipeline; every field has a default and
// unknown keys are errors. The CLI defaults to repair mode.
struct PipelineConfig {
    StageConfig stage;
    PlacementOptions placement{1.0, /*repair=*/true, false};
    RetrievalOptions retrieval;
    uint64_t seed = 0;
    IwgMode iwg_mode = IwgMode::union_mode;
    std::string out_dir = "out";
};

PipelineConfig parse_pipeline_config(const std::string& text);
PipelineConfig load_pipeline_config(const std::string& path);
std::string serialize_pipeline_config(const PipelineConfig& cfg);

} // namespace stage
