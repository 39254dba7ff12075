#pragma once
#include <cstddef>
#include <vector>

#include "finfront/vec.hpp"

// Planar geometric predicates and polyline utilities used by the cut-point
// filter, the front diagnostics, and the tests.

namespace finfront::geom {

// Sign-exact orientation test: > 0 if (a,b,c) turn counterclockwise, < 0 if
// clockwise, exactly 0 if collinear. Floating-point filter with an adaptive
// exact fallback; magnitude is only meaningful when the filter hits.
double orient2d(Vec2 a, Vec2 b, Vec2 c);

struct SegIntersection {
    bool hit = false;
    double u = 0.0; // parameter on segment a0-a1 in [0,1]
    double w = 0.0; // parameter on segment b0-b1 in [0,1]
    Vec2 point;
    bool collinear = false;
};

// Segment-segment intersection, intersection decided by exact orientation
// signs; parameters by linear interpolation. Touching endpoints count as
// intersections. Collinear overlap reports the first overlapping point in
// the parameterization of segment a.
SegIntersection segment_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// Number of crossing pairs of non-adjacent segments in a closed polyline.
std::size_t count_self_intersections(const std::vector<Vec2>& closed);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Max over a of min distance to points of b (directed).
double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b);
// Symmetric Hausdorff distance between point sets.
double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

} // namespace finfront::geom
