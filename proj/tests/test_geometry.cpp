#include "stage/geometry.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace stage;

namespace {
Aabb box(double x0, double y0, double x1, double y1, double h0, double h1) {
    return {x0, y0, x1, y1, h0, h1};
}
} // namespace

TEST_CASE("intersection_volume basics") {
    const Aabb cube = box(0, 0, 100, 100, 0, 100);
    CHECK(intersection_volume(cube, cube).cm3 == doctest::Approx(1'000'000));
    CHECK(intersection_volume(cube, box(100, 0, 200, 100, 0, 100)).cm3 == 0); // touching faces
    const Aabb shifted = box(50, 0, 150, 100, 0, 100);
    CHECK(intersection_volume(cube, shifted).cm3 == doctest::Approx(500'000));
    CHECK(intersection_volume(cube, shifted).m3() == doctest::Approx(0.5));
}

TEST_CASE("intersection_volume symmetry and bound property") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Aabb a = fixtures::random_int_box(rng, 0, 200);
        Aabb b = fixtures::random_int_box(rng, 0, 200);
        const double ab = intersection_volume(a, b).cm3;
        CHECK(ab == intersection_volume(b, a).cm3);
        CHECK(ab <= std::min(a.volume(), b.volume()));
    }
}

TEST_CASE("clip_to_stage") {
    StageConfig cfg;
    SUBCASE("clamp at zero") {
        auto c = clip_to_stage(box(-50, 0, 50, 100, 0, 100), cfg);
        REQUIRE(c.has_value());
        CHECK(c->x0 == 0);
        CHECK(c->x1 == 50);
        CHECK(c->volume() == doctest::Approx(500'000));
    }
    SUBCASE("identity for an inner box") {
        const Aabb inner = box(10, 20, 30, 40, 5, 50);
        auto c = clip_to_stage(inner, cfg);
        REQUIRE(c.has_value());
        CHECK(c->x0 == inner.x0);
        CHECK(c->y1 == inner.y1);
        CHECK(c->volume() == doctest::Approx(inner.volume()));
    }
    SUBCASE("fully outside") {
        CHECK(!clip_to_stage(box(1000, 0, 1100, 100, 0, 100), cfg).has_value());
    }
}

TEST_CASE("out_of_bound_volume") {
    StageConfig cfg;
    CHECK(out_of_bound_volume(box(-50, 0, 50, 100, 0, 100), cfg).cm3 ==
          doctest::Approx(500'000));
    CHECK(out_of_bound_volume(box(10, 10, 90, 90, 0, 90), cfg).cm3 == 0);
    // corner box: 200x200x100 total, 100x100x100 inside
    const Aabb corner = box(900, 900, 1100, 1100, 0, 100);
    CHECK(out_of_bound_volume(corner, cfg).cm3 == doctest::Approx(3'000'000));
    CHECK(out_of_bound_volume(corner, cfg).cm3 ==
          doctest::Approx(oracles::voxel_out_of_bound(corner, cfg.stage_size, 800, 1200)));
}

TEST_CASE("oob + clipped volume = total volume") {
    StageConfig cfg;
    cfg.stage_size = 100;
    cfg.back_wall_y = 100;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Aabb a = fixtures::random_int_box(rng, -50, 200);
        auto clipped = clip_to_stage(a, cfg);
        const double inside = clipped ? clipped->volume() : 0.0;
        CHECK(out_of_bound_volume(a, cfg).cm3 + inside == doctest::Approx(a.volume()));
    }
}

TEST_CASE("union_intersection_volume basics") {
    const Aabb cube = box(0, 0, 100, 100, 0, 100);
    const Aabb shifted = box(50, 0, 150, 100, 0, 100);
    CHECK(union_intersection_volume({cube}, {shifted}).cm3 == doctest::Approx(500'000));
    // duplicated boxes change nothing
    CHECK(union_intersection_volume({cube, cube}, {shifted}).cm3 ==
          union_intersection_volume({cube}, {shifted}).cm3);
    CHECK(union_intersection_volume({}, {cube}).cm3 == 0);
}

TEST_CASE("union_intersection_volume equals voxel oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Aabb> set_a, set_b;
        for (int i = 0; i < 5; ++i) {
            set_a.push_back(fixtures::random_int_box(rng, 0, 200, 1, 120));
            set_b.push_back(fixtures::random_int_box(rng, 0, 200, 1, 120));
        }
        const double expected = oracles::voxel_union_intersection(set_a, set_b, 0, 200);
        CHECK(union_intersection_volume(set_a, set_b).cm3 == doctest::Approx(expected));
        // symmetric and order invariant
        CHECK(union_intersection_volume(set_b, set_a).cm3 == doctest::Approx(expected));
        std::reverse(set_a.begin(), set_a.end());
        CHECK(union_intersection_volume(set_a, set_b).cm3 == doctest::Approx(expected));
    }
}
