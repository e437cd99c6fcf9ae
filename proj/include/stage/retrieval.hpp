#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stage {

struct AssetRecord {
    std::string asset_id;
    std::string name;
    double length = 0, width = 0, height = 0; // cm
    std::vector<float> image_embedding;       // unit L2 norm
    std::vector<std::string> tags;
};

// Embedding similarity seam: real CLIP / Sentence-BERT backends live behind
// this interface, out of process. Implementations must be deterministic for
// fixed inputs.
class SimilarityProvider {
public:
    virtual ~SimilarityProvider() = default;
    virtual double text_image_score(const std::string& query,
                                    const std::vector<float>& image_embedding) const = 0;
    virtual double text_text_score(const std::string& query,
                                   const std::string& name) const = 0;
};

// Reference provider hashing text into pseudo-embeddings; CLIP-logit-style
// score range so the default threshold is meaningful.
class StubProvider : public SimilarityProvider {
public:
    static std::vector<float> pseudo_embedding(const std::string& text, size_t dim = 64);

    double text_image_score(const std::string& query,
                            const std::vector<float>& image_embedding) const override;
    double text_text_score(const std::string& query,
                           const std::string& name) const override;
};

struct ScoredAsset {
    std::string asset_id;
    double combined = 0;
    double image_score = 0;
    double text_score = 0;
};

enum class ThresholdTarget { combined, image };

struct RetrievalOptions {
    double threshold = 27;
    int top_k = 10;
    double image_weight = 1.0;
    double text_weight = 1.0;
    ThresholdTarget threshold_target = ThresholdTarget::image;
};

// Scores every record, sorts descending by combined score with ties broken by
// ascending asset_id.
std::vector<ScoredAsset> score_assets(const std::string& query,
                                      const std::vector<AssetRecord>& index,
                                      const SimilarityProvider& provider,
                                      const RetrievalOptions& options = {});

// Candidate set = (top_k by rank) ∩ (gated score >= threshold); the gate is
// the image or the combined score per threshold_target.
std::vector<std::string> candidate_set(const std::vector<ScoredAsset>& scored,
                                       const RetrievalOptions& options);

// Uniform seeded choice from the candidate set; nullopt when it is empty.
// Pure function of (scored, options, seed) on every platform.
std::optional<std::string> select_asset(const std::vector<ScoredAsset>& scored,
                                        const RetrievalOptions& options, uint64_t seed);

// Index file: one tab-separated record per line
//   asset_id \t name \t l,w,h \t base64(float32 embedding) \t tag,tag,...
std::vector<AssetRecord> parse_asset_index(const std::string& text);
std::string serialize_asset_index(const std::vector<AssetRecord>& index);

} // namespace stage
