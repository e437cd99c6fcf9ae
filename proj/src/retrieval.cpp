#include "stage/retrieval.hpp"

#include "stage/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace stage {

namespace {

constexpr char kB64Chars[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<uint8_t>& data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    for (size_t i = 0; i < data.size(); i += 3) {
        uint32_t v = uint32_t(data[i]) << 16;
        if (i + 1 < data.size()) v |= uint32_t(data[i + 1]) << 8;
        if (i + 2 < data.size()) v |= uint32_t(data[i + 2]);
        out.push_back(kB64Chars[(v >> 18) & 63]);
        out.push_back(kB64Chars[(v >> 12) & 63]);
        out.push_back(i + 1 < data.size() ? kB64Chars[(v >> 6) & 63] : '=');
        out.push_back(i + 2 < data.size() ? kB64Chars[v & 63] : '=');
    }
    return out;
}

std::vector<uint8_t> base64_decode(const std::string& text) {
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    if (text.size() % 4 != 0) throw SchemaError("base64 field length not a multiple of 4");
    std::vector<uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (size_t i = 0; i < text.size(); i += 4) {
        int pad = 0;
        uint32_t v = 0;
        for (size_t j = 0; j < 4; ++j) {
            char c = text[i + j];
            if (c == '=') { ++pad; v <<= 6; continue; }
            int d = value_of(c);
            if (d < 0 || pad > 0) throw SchemaError("invalid base64 character");
            v = (v << 6) | uint32_t(d);
        }
        out.push_back(uint8_t((v >> 16) & 0xff));
        if (pad < 2) out.push_back(uint8_t((v >> 8) & 0xff));
        if (pad < 1) out.push_back(uint8_t(v & 0xff));
    }
    return out;
}

std::vector<uint8_t> floats_to_bytes_le(const std::vector<float>& values) {
    std::vector<uint8_t> bytes;
    bytes.reserve(values.size() * 4);
    for (float f : values) {
        uint32_t bits;
        std::memcpy(&bits, &f, 4);
        for (int shift : {0, 8, 16, 24}) bytes.push_back(uint8_t((bits >> shift) & 0xff));
    }
    return bytes;
}

std::vector<float> bytes_to_floats_le(const std::vector<uint8_t>& bytes) {
    if (bytes.size() % 4 != 0) throw SchemaError("embedding byte length not a multiple of 4");
    std::vector<float> values(bytes.size() / 4);
    for (size_t i = 0; i < values.size(); ++i) {
        uint32_t bits = uint32_t(bytes[4 * i]) | uint32_t(bytes[4 * i + 1]) << 8 |
                        uint32_t(bytes[4 * i + 2]) << 16 | uint32_t(bytes[4 * i + 3]) << 24;
        std::memcpy(&values[i], &bits, 4);
    }
    return values;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double dot(const std::vector<float>& a, const std::vector<float>& b) {
    const size_t n = std::min(a.size(), b.size());
    double sum = 0;
    for (size_t i = 0; i < n; ++i) sum += double(a[i]) * double(b[i]);
    return sum;
}

} // namespace

std::vector<float> StubProvider::pseudo_embedding(const std::string& text, size_t dim) {
    std::vector<double> acc(dim, 0.0);
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        uint64_t h = fnv1a(token);
        // feature-hash each token into three signed slots
        uint64_t state = h;
        for (int k = 0; k < 3; ++k) {
            uint64_t r = splitmix64(state);
            size_t idx = size_t(r % dim);
            acc[idx] += ((r >> 32) & 1) ? 1.0 : -1.0;
        }
        token.clear();
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            token.push_back(char(std::tolower(static_cast<unsigned char>(c))));
        else
            flush();
    }
    flush();

    double norm = 0;
    for (double v : acc) norm += v * v;
    norm = std::sqrt(norm);
    std::vector<float> out(dim, 0.0f);
    if (norm > 0)
        for (size_t i = 0; i < dim; ++i) out[i] = float(acc[i] / norm);
    return out;
}

double StubProvider::text_image_score(const std::string& query,
                                      const std::vector<float>& image_embedding) const {
    // CLIP-logit-style scale: cosine in [-1,1] mapped to roughly [15,35]
    return 25.0 + 10.0 * dot(pseudo_embedding(query), image_embedding);
}

double StubProvider::text_text_score(const std::string& query,
                                     const std::string& name) const {
    return 5.0 * dot(pseudo_embedding(query), pseudo_embedding(name));
}

std::vector<ScoredAsset> score_assets(const std::string& query,
                                      const std::vector<AssetRecord>& index,
                                      const SimilarityProvider& provider,
                                      const RetrievalOptions& options) {
    if (query.empty()) throw SchemaError("retrieval query must be non-empty");
    std::vector<ScoredAsset> scored;
    scored.reserve(index.size());
    for (const auto& record : index) {
        ScoredAsset s;
        s.asset_id = record.asset_id;
        try {
            s.image_score = provider.text_image_score(query, record.image_embedding);
            s.text_score = provider.text_text_score(query, record.name);
        } catch (const std::exception& e) {
            throw ProviderError("asset '" + record.asset_id + "': " + e.what());
        }
        if (!std::isfinite(s.image_score) || !std::isfinite(s.text_score))
            throw ProviderError("asset '" + record.asset_id + "': non-finite score");
        s.combined = options.image_weight * s.image_score + options.text_weight * s.text_score;
        scored.push_back(std::move(s));
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredAsset& a, const ScoredAsset& b) {
        if (a.combined != b.combined) return a.combined > b.combined;
        return a.asset_id < b.asset_id;
    });
    return scored;
}

std::vector<std::string> candidate_set(const std::vector<ScoredAsset>& scored,
                                       const RetrievalOptions& options) {
    std::vector<std::string> candidates;
    const size_t limit = std::min(scored.size(), size_t(std::max(0, options.top_k)));
    for (size_t i = 0; i < limit; ++i) {
        const double gated = options.threshold_target == ThresholdTarget::image
                                 ? scored[i].image_score
                                 : scored[i].combined;
        if (gated >= options.threshold) candidates.push_back(scored[i].asset_id);
    }
    return candidates;
}

std::optional<std::string> select_asset(const std::vector<ScoredAsset>& scored,
                                        const RetrievalOptions& options, uint64_t seed) {
    auto candidates = candidate_set(scored, options);
    if (candidates.empty()) return std::nullopt;
    uint64_t state = seed;
    uint64_t r = splitmix64(state);
    return candidates[size_t(r % candidates.size())];
}

std::vector<AssetRecord> parse_asset_index(const std::string& text) {
    std::vector<AssetRecord> index;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        const std::string ctx = "asset index line " + std::to_string(lineno);
        if (fields.size() != 5) throw SchemaError(ctx + ": expected 5 tab-separated fields");

        AssetRecord record;
        record.asset_id = fields[0];
        record.name = fields[1];
        if (record.asset_id.empty()) throw SchemaError(ctx + ": empty asset_id");
        if (std::sscanf(fields[2].c_str(), "%lf,%lf,%lf", &record.length, &record.width,
                        &record.height) != 3)
            throw SchemaError(ctx + ": dims must be 'l,w,h'");
        if (!(record.length > 0 && record.width > 0 && record.height > 0))
            throw SchemaError(ctx + " ('" + record.asset_id + "'): dims must be positive");
        record.image_embedding = bytes_to_floats_le(base64_decode(fields[3]));
        double norm = std::sqrt(dot(record.image_embedding, record.image_embedding));
        if (std::abs(norm - 1.0) > 1e-6)
            throw SchemaError(ctx + " ('" + record.asset_id +
                              "'): embedding not unit norm (|v| = " + std::to_string(norm) + ")");
        if (!fields[4].empty()) {
            std::istringstream tags(fields[4]);
            std::string tag;
            while (std::getline(tags, tag, ',')) record.tags.push_back(tag);
        }
        index.push_back(std::move(record));
    }
    return index;
}

std::string serialize_asset_index(const std::vector<AssetRecord>& index) {
    std::ostringstream out;
    for (const auto& r : index) {
        out << r.asset_id << '\t' << r.name << '\t';
        char dims[96];
        std::snprintf(dims, sizeof dims, "%.17g,%.17g,%.17g", r.length, r.width, r.height);
        out << dims << '\t' << base64_encode(floats_to_bytes_le(r.image_embedding)) << '\t';
        for (size_t i = 0; i < r.tags.size(); ++i) out << (i ? "," : "") << r.tags[i];
        out << '\n';
    }
    return out.str();
}

} // namespace stage
