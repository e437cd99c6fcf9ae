#pragma once

#include "stage/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stage {

enum class IwgMode { union_mode, pairwise_sum };

// Optional seam for a CLIP-based similarity metric; the core ships no model
// and never calls this in CI.
class ClipSimProvider {
public:
    virtual ~ClipSimProvider() = default;
    virtual double score(const std::string& text, const std::string& image_path) const = 0;
};

struct StageMetrics {
    std::string stage_id;
    double oob_m3 = 0;
    double ois_m3 = 0;
    std::optional<double> iwg_m3; // present only when ground truth was given
    int class_count = 0;
};

struct MetricsReport {
    std::vector<StageMetrics> per_stage;
    double mean_oob_m3 = 0;
    double mean_ois_m3 = 0;
    std::optional<double> mean_iwg_m3;
    double mean_class_diversity = 0;
    int min_classes = 0;
    int max_classes = 0;
    IwgMode iwg_mode = IwgMode::union_mode;
};

// Sum of per-entity out-of-bound volume, in m^3.
Volume metric_oob(const std::vector<Aabb>& layout, const StageConfig& cfg);

// Sum of pairwise intersection volume over unordered distinct pairs, in m^3.
Volume metric_ois(const std::vector<Aabb>& layout);

// Intersection volume against ground truth: union ∩ union, or the sum of all
// cross pairs in pairwise_sum mode.
Volume metric_iwg(const std::vector<Aabb>& generated, const std::vector<Aabb>& ground_truth,
                  IwgMode mode);

struct ClassDiversity {
    double mean = 0;
    int min = 0;
    int max = 0;
};

// Per-stage unique category count (exact, case-sensitive match).
// Throws EmptyError on zero stages.
ClassDiversity metric_class_diversity(
    const std::vector<std::vector<std::string>>& categories_per_stage);

struct StageInput {
    std::string stage_id;
    std::vector<Aabb> boxes;
    std::vector<std::string> categories;
    std::optional<std::vector<Aabb>> ground_truth;
};

MetricsReport build_report(const std::vector<StageInput>& stages, const StageConfig& cfg,
                           IwgMode iwg_mode = IwgMode::union_mode);

// Machine-readable report (full precision).
std::string serialize_report(const MetricsReport& report);

// Aligned table with 3 significant figures, mirroring the published layout,
// plus a Min/Max Classes line like "5/22".
std::string format_report_table(const MetricsReport& report);

} // namespace stage
