#include "stage/projection.hpp"

#include "stage/errors.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace stage;

namespace {

// independent similar-triangles projection of a single point
void project_point(const Point3& viewer, double px, double py, double pz, double wall,
                   double& out_x, double& out_z) {
    const double t = (wall - viewer.y) / (py - viewer.y);
    out_x = viewer.x + t * (px - viewer.x);
    out_z = viewer.z + t * (pz - viewer.z);
}

} // namespace

TEST_CASE("orthographic shadow copies the silhouette") {
    StageConfig cfg;
    cfg.projection_mode = ProjectionMode::orthographic;
    const Aabb entity{400, 400, 600, 600, 0, 200};
    auto box = shadow_from_viewer(entity, {{500, -500, 120}}, cfg);
    CHECK(box.wall_x0 == 400);
    CHECK(box.wall_x1 == 600);
    CHECK(box.wall_h0 == 0);
    CHECK(box.wall_h1 == 200);
}

TEST_CASE("perspective shadow from a centered floor viewer") {
    StageConfig cfg;
    Viewer viewer{{500, -500, 0}};
    const Aabb entity{400, 400, 600, 600, 0, 200};
    auto box = shadow_from_viewer(entity, viewer, cfg);
    // similar triangles: front face at y=400 scales by t=(1000+500)/900
    CHECK(box.wall_x0 == doctest::Approx(1000.0 / 3).epsilon(1e-9));
    CHECK(box.wall_x1 == doctest::Approx(2000.0 / 3).epsilon(1e-9));
    CHECK(box.wall_h0 == 0);
    CHECK(box.wall_h1 == doctest::Approx(1000.0 / 3).epsilon(1e-9));
}

TEST_CASE("entity touching the wall keeps its own footprint in the shadow") {
    StageConfig cfg;
    Viewer viewer{{200, -300, 120}};
    const Aabb entity{450, 800, 650, 1000, 0, 300};
    auto box = shadow_from_viewer(entity, viewer, cfg);
    CHECK(box.wall_x0 <= 450);
    CHECK(box.wall_x1 >= 650);
    CHECK(box.wall_h1 >= 300);
}

TEST_CASE("degenerate geometry is rejected") {
    StageConfig cfg;
    Viewer viewer{{500, -500, 120}};
    const Aabb behind{400, -700, 600, -600, 0, 100};
    CHECK_THROWS_AS(shadow_from_viewer(behind, viewer, cfg), DegenerateError);
}

TEST_CASE("single-viewer union degenerates to shadow_from_viewer") {
    StageConfig cfg;
    cfg.audience_left = {500, -500, 120};
    cfg.audience_right = {500, -500, 120};
    StageLayout layout;
    layout.config = cfg;
    PlacedEntity p;
    p.spec.id = "e";
    p.box = {300, 300, 500, 500, 0, 150};
    layout.entities.push_back(p);

    auto boxes = occlusion_union(layout, cfg);
    REQUIRE(boxes.size() == 1);
    auto single = shadow_from_viewer(p.box, {{500, -500, 120}}, cfg);
    CHECK(boxes[0].wall_x0 == doctest::Approx(single.wall_x0));
    CHECK(boxes[0].wall_x1 == doctest::Approx(single.wall_x1));
    CHECK(boxes[0].wall_h0 == doctest::Approx(single.wall_h0));
    CHECK(boxes[0].wall_h1 == doctest::Approx(single.wall_h1));
}

TEST_CASE("two extreme viewers widen the union beyond either single shadow") {
    StageConfig cfg;
    cfg.audience_left = {0, -500, 120};
    cfg.audience_right = {1000, -500, 120};
    StageLayout layout;
    layout.config = cfg;
    PlacedEntity p;
    p.spec.id = "e";
    p.box = {450, 400, 550, 500, 0, 150};
    layout.entities.push_back(p);

    auto boxes = occlusion_union(layout, cfg);
    REQUIRE(boxes.size() == 1);
    auto from_left = shadow_from_viewer(p.box, {cfg.audience_left}, cfg);
    auto from_right = shadow_from_viewer(p.box, {cfg.audience_right}, cfg);
    CHECK(boxes[0].wall_x0 < from_left.wall_x0);
    CHECK(boxes[0].wall_x1 > from_right.wall_x1);
    CHECK(boxes[0].wall_x1 - boxes[0].wall_x0 >
          std::max(from_left.wall_x1 - from_left.wall_x0,
                   from_right.wall_x1 - from_right.wall_x0));
}

TEST_CASE("sampled occlusion is contained in the computed box") {
    StageConfig cfg;
    std::mt19937_64 rng(17);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };

    for (int trial = 0; trial < 40; ++trial) {
        PlacedEntity p;
        p.spec.id = "e";
        const double x0 = uniform(50, 800), y0 = uniform(50, 800);
        p.box = {x0, y0, x0 + uniform(10, 150), y0 + uniform(10, 150), 0, uniform(20, 400)};

        StageLayout layout;
        layout.config = cfg;
        layout.entities.push_back(p);
        auto boxes = occlusion_union(layout, cfg);
        REQUIRE(boxes.size() == 1);
        const auto& occ = boxes[0];

        for (int v = 0; v < 50; ++v) {
            const double s = v / 49.0;
            Point3 viewer{cfg.audience_left.x +
                              s * (cfg.audience_right.x - cfg.audience_left.x),
                          cfg.audience_left.y, cfg.audience_left.z};
            for (int ray = 0; ray < 100; ++ray) {
                // sample a point on the entity and trace through it to the wall
                const double px = uniform(p.box.x0, p.box.x1);
                const double py = uniform(p.box.y0, p.box.y1);
                const double pz = uniform(p.box.h0, p.box.h1);
                double wx, wz;
                project_point(viewer, px, py, pz, cfg.back_wall_y, wx, wz);
                if (wx < 0 || wx > cfg.stage_size || wz < 0 || wz > cfg.stage_size)
                    continue; // off the wall, clamping discards it by design
                CHECK(wx >= occ.wall_x0 - 1e-9);
                CHECK(wx <= occ.wall_x1 + 1e-9);
                CHECK(wz <= occ.wall_h1 + 1e-9);
                if (wz >= 0) CHECK(wz >= occ.wall_h0 - 1e-9);
            }
        }
    }
}

TEST_CASE("tightness at the extreme viewers") {
    StageConfig cfg;
    std::mt19937_64 rng(19);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    for (int trial = 0; trial < 50; ++trial) {
        Aabb box;
        const double x0 = uniform(100, 700), y0 = uniform(100, 700);
        box = {x0, y0, x0 + uniform(20, 200), y0 + uniform(20, 200), 0, uniform(50, 500)};

        for (const Point3& vp : {cfg.audience_left, cfg.audience_right}) {
            auto shadow = shadow_from_viewer(box, {vp}, cfg);
            double min_x = 1e18, max_x = -1e18, max_z = -1e18;
            for (double px : {box.x0, box.x1})
                for (double py : {box.y0, box.y1})
                    for (double pz : {box.h0, box.h1}) {
                        double wx, wz;
                        project_point(vp, px, py, pz, cfg.back_wall_y, wx, wz);
                        min_x = std::min(min_x, wx);
                        max_x = std::max(max_x, wx);
                        max_z = std::max(max_z, wz);
                    }
            CHECK(shadow.wall_x0 ==
                  doctest::Approx(std::clamp(min_x, 0.0, cfg.stage_size)).epsilon(1e-9));
            CHECK(shadow.wall_x1 ==
                  doctest::Approx(std::clamp(max_x, 0.0, cfg.stage_size)).epsilon(1e-9));
            CHECK(shadow.wall_h1 ==
                  doctest::Approx(std::clamp(max_z, 0.0, cfg.stage_size)).epsilon(1e-9));
        }
    }
}

TEST_CASE("monotonicity: enlarging an entity never shrinks its shadow") {
    StageConfig cfg;
    const Aabb small{400, 400, 500, 500, 0, 100};
    const Aabb large{390, 390, 520, 510, 0, 130};
    for (const Point3& vp : {cfg.audience_left, cfg.audience_right}) {
        auto a = shadow_from_viewer(small, {vp}, cfg);
        auto b = shadow_from_viewer(large, {vp}, cfg);
        CHECK(b.wall_x0 <= a.wall_x0);
        CHECK(b.wall_x1 >= a.wall_x1);
        CHECK(b.wall_h1 >= a.wall_h1);
    }
}

TEST_CASE("occlusion serialization round-trip") {
    std::vector<OcclusionBox> boxes = {{"a", 10.5, 200.25, 0, 300},
                                       {"b", 0, 1000, 50, 60.75}};
    auto parsed = parse_occlusions(serialize_occlusions(boxes));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].entity_id == "a");
    CHECK(parsed[1].wall_h1 == 60.75);
    CHECK(serialize_occlusions(parsed) == serialize_occlusions(boxes));
}
