#include <cmath>

#include "doctest.h"
#include "finfront/geom2d.hpp"

using namespace finfront;
using namespace finfront::geom;

namespace {
inline int sgn(double v) { return (v > 0.0) - (v < 0.0); }
} // namespace

TEST_CASE("orient2d basic and exact signs") {
    CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) > 0.0);
    CHECK(orient2d({0, 0}, {0, 1}, {1, 0}) < 0.0);
    CHECK(orient2d({0, 0}, {1, 1}, {2, 2}) == 0.0);
    CHECK(orient2d({0, 0}, {1, 0}, {2, 0}) == 0.0);

    // near-collinear cases frozen from exact rational arithmetic
    struct Case {
        double ax, ay, bx, by, cx, cy;
        int sign;
    };
    static const Case cases[] = {
        {0.5, 0.5, 12, 12, 10.541372528367678, 10.541372528367679, 1},
        {0.5, 0.5, 12, 12, 2.7250247632631774, 2.7250247632631766, -1},
        {0.5, 0.5, 12, 12, 10.030978854531943, 10.030978854531947, 1},
        {0.5, 0.5, 12, 12, 1.9713207287966015, 1.971320728796601, -1},
        {0.5, 0.5, 12, 12, 2.5554828483732379, 2.5554828483732379, 0},
        {0.5, 0.5, 12, 12, 3.8286499333406834, 3.8286499333406825, -1},
        {0.5, 0.5, 12, 12, 10.727531806057014, 10.72753180605701, -1},
        {0.5, 0.5, 12, 12, 4.8340184834935327, 4.8340184834935345, 1},
        {0.5, 0.5, 12, 12, 6.1050624256246113, 6.1050624256246122, 1},
        {0.5, 0.5, 12, 12, 3.0167026761162457, 3.0167026761162452, -1},
        {0.5, 0.5, 12, 12, 8.2133730817779842, 8.2133730817779806, -1},
        {0.5, 0.5, 12, 12, 6.2783699220278422, 6.2783699220278413, -1},
        {0.5, 0.5, 12, 12, 2.243972984990112, 2.2439729849901129, 1},
        {0.5, 0.5, 12, 12, 10.043299298631153, 10.043299298631149, -1},
        {0.5, 0.5, 12, 12, 7.1834637359616744, 7.1834637359616726, -1},
        {0.5, 0.5, 12, 12, 6.3884137163074666, 6.3884137163074648, -1},
        {0.5, 0.5, 12, 12, 4.1301866351389238, 4.1301866351389256, 1},
        {0.5, 0.5, 12, 12, 2.2303147072392324, 2.2303147072392324, 0},
        {0.5, 0.5, 12, 12, 6.0755346165719697, 6.0755346165719697, 0},
        {0.5, 0.5, 12, 12, 4.1013790450409013, 4.1013790450409005, -1},
        {0.5, 0.5, 12, 12, 5.8211697791837409, 5.8211697791837427, 1},
        {0.5, 0.5, 12, 12, 7.7717862321254305, 7.7717862321254323, 1},
        {0.5, 0.5, 12, 12, 2.2994126860289139, 2.2994126860289139, 0},
        {0.5, 0.5, 12, 12, 2.9726695338794773, 2.9726695338794777, 1},
        {9.9999999999999998e-13, 9.9999999999999998e-13, 30000000, 30000000,
         17832380.986155972, 17832380.986155968, -1},
        {9.9999999999999998e-13, 9.9999999999999998e-13, 30000000, 30000000,
         6975153.5756305717, 6975153.5756305726, 1},
        {9.9999999999999998e-13, 9.9999999999999998e-13, 30000000, 30000000,
         14938470.013082461, 14938470.01308246, -1},
        {9.9999999999999998e-13, 9.9999999999999998e-13, 30000000, 30000000,
         16031944.273946429, 16031944.273946427, -1},
        {9.9999999999999998e-13, 9.9999999999999998e-13, 30000000, 30000000,
         6488315.9911001278, 6488315.9911001278, 0},
        {9.9999999999999998e-13, 9.9999999999999998e-13, 30000000, 30000000,
         19877639.487355951, 19877639.487355955, 1},
        {9.9999999999999998e-13, 9.9999999999999998e-13, 30000000, 30000000,
         8542099.7594969925, 8542099.7594969925, 0},
        {9.9999999999999998e-13, 9.9999999999999998e-13, 30000000, 30000000,
         14174550.315086642, 14174550.315086642, 0},
    };
    for (const Case& c : cases) {
        CHECK(sgn(orient2d({c.ax, c.ay}, {c.bx, c.by}, {c.cx, c.cy})) == c.sign);
    }
}

TEST_CASE("segment intersection") {
    SUBCASE("proper crossing with parameters") {
        const auto r = segment_intersect({0, -1}, {0, 1}, {-1, 0.5}, {1, 0.5});
        REQUIRE(r.hit);
        CHECK(r.u == doctest::Approx(0.75));
        CHECK(r.w == doctest::Approx(0.5));
        CHECK(r.point.x == doctest::Approx(0.0));
        CHECK(r.point.y == doctest::Approx(0.5));
    }
    SUBCASE("miss") {
        CHECK_FALSE(segment_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}).hit);
        CHECK_FALSE(segment_intersect({0, 0}, {1, 0}, {2, -1}, {2, 1}).hit);
    }
    SUBCASE("endpoint touch") {
        const auto r = segment_intersect({0, 0}, {1, 0}, {1, 0}, {2, 5});
        CHECK(r.hit);
        CHECK(r.u == doctest::Approx(1.0));
        CHECK(r.w == doctest::Approx(0.0));
    }
    SUBCASE("collinear overlap reports first contact") {
        const auto r = segment_intersect({0, 0}, {4, 0}, {1, 0}, {3, 0});
        REQUIRE(r.hit);
        CHECK(r.collinear);
        CHECK(r.u == doctest::Approx(0.25));
        const auto r2 = segment_intersect({0, 0}, {4, 0}, {6, 0}, {9, 0});
        CHECK_FALSE(r2.hit);
    }
}

TEST_CASE("polyline self-intersections") {
    const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(count_self_intersections(square) == 0);
    const std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    CHECK(count_self_intersections(bowtie) == 1);
}

TEST_CASE("hausdorff distance") {
    const std::vector<Vec2> a{{0, 0}, {1, 0}};
    const std::vector<Vec2> b{{0, 0}, {1, 0.5}};
    CHECK(hausdorff(a, b) == doctest::Approx(0.5));
    CHECK(directed_hausdorff(a, a) == 0.0);
    CHECK(point_segment_distance({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(point_segment_distance({2, 1}, {-1, 0}, {1, 0}) == doctest::Approx(std::sqrt(2.0)));
}
