#pragma once

#include "stage/config.hpp"
#include "stage/schema.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stage {

struct ManifestEntry {
    std::string name; // artifact role, e.g. "layout"
    std::string file; // filename inside the output directory
    std::string sha256;
};

struct PipelineResult {
    std::vector<ManifestEntry> artifacts;
    bool failed = false;
    std::string failure; // first failing stage's message
    int exit_code = 0;
};

// Runs place -> project -> background -> (metrics when ground truth given)
// -> render, writing every artifact plus manifest.json into out_dir. On
// failure the partial artifacts are kept and the manifest carries a failure
// marker.
PipelineResult run_pipeline(const SceneSpec& scene, const PipelineConfig& cfg,
                            const std::string& out_dir,
                            const std::optional<GroundTruthLayout>& ground_truth = {});

std::string serialize_manifest(const PipelineResult& result);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace stage
