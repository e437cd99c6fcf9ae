#include "stage/geometry.hpp"

#include "stage/errors.hpp"

#include <algorithm>
#include <cmath>

namespace stage {

bool Aabb::valid() const {
    return std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) &&
           std::isfinite(y1) && std::isfinite(h0) && std::isfinite(h1) &&
           x0 < x1 && y0 < y1 && h0 < h1;
}

void StageConfig::validate() const {
    if (!(stage_size > 0))
        throw SchemaError("stage_size must be positive");
    if (!(audience_left.y < 0) || !(audience_right.y < 0))
        throw SchemaError("audience viewers must sit in front of the stage (y < 0)");
    if (audience_left.x > audience_right.x)
        throw SchemaError("audience_left.x must not exceed audience_right.x");
}

Volume intersection_volume(const Aabb& a, const Aabb& b) {
    double dx = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
    double dy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
    double dh = std::min(a.h1, b.h1) - std::max(a.h0, b.h0);
    if (dx <= 0 || dy <= 0 || dh <= 0) return {0};
    return {dx * dy * dh};
}

std::optional<Aabb> clip_to_stage(const Aabb& a, const StageConfig& cfg) {
    const double n = cfg.stage_size;
    Aabb c{std::max(a.x0, 0.0), std::max(a.y0, 0.0),
           std::min(a.x1, n),   std::min(a.y1, n),
           std::max(a.h0, 0.0), std::min(a.h1, n)};
    if (c.x0 >= c.x1 || c.y0 >= c.y1 || c.h0 >= c.h1) return std::nullopt;
    return c;
}

Volume out_of_bound_volume(const Aabb& a, const StageConfig& cfg) {
    auto clipped = clip_to_stage(a, cfg);
    double inside = clipped ? clipped->volume() : 0.0;
    return {a.volume() - inside};
}

namespace {

std::vector<double> boundary_values(const std::vector<Aabb>& set_a,
                                    const std::vector<Aabb>& set_b,
                                    double Aabb::* lo, double Aabb::* hi) {
    std::vector<double> v;
    v.reserve(2 * (set_a.size() + set_b.size()));
    for (const auto& b : set_a) { v.push_back(b.*lo); v.push_back(b.*hi); }
    for (const auto& b : set_b) { v.push_back(b.*lo); v.push_back(b.*hi); }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool any_contains(const std::vector<Aabb>& set, double cx, double cy, double ch) {
    for (const auto& b : set)
        if (cx > b.x0 && cx < b.x1 && cy > b.y0 && cy < b.y1 && ch > b.h0 && ch < b.h1)
            return true;
    return false;
}

} // namespace

Volume union_intersection_volume(const std::vector<Aabb>& set_a,
                                 const std::vector<Aabb>& set_b) {
    if (set_a.empty() || set_b.empty()) return {0};
    auto xs = boundary_values(set_a, set_b, &Aabb::x0, &Aabb::x1);
    auto ys = boundary_values(set_a, set_b, &Aabb::y0, &Aabb::y1);
    auto hs = boundary_values(set_a, set_b, &Aabb::h0, &Aabb::h1);

    double total = 0;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const double cx = 0.5 * (xs[i] + xs[i + 1]);
        for (size_t j = 0; j + 1 < ys.size(); ++j) {
            const double cy = 0.5 * (ys[j] + ys[j + 1]);
            for (size_t k = 0; k + 1 < hs.size(); ++k) {
                const double ch = 0.5 * (hs[k] + hs[k + 1]);
                if (any_contains(set_a, cx, cy, ch) && any_contains(set_b, cx, cy, ch))
                    total += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]) * (hs[k + 1] - hs[k]);
            }
        }
    }
    return {total};
}

} // namespace stage
