#include "finfront/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finfront::geom {

// ---------------------------------------------------------------------------
// Adaptive exact orientation (compensated-arithmetic expansions). The error
// bounds follow the classic adaptive-precision formulation; all arithmetic
// relies on strict IEEE double semantics (no FMA contraction, no fast math).

namespace {

constexpr double kEpsilon = 1.1102230246251565e-16; // 2^-53
constexpr double kSplitter = 134217729.0;           // 2^27 + 1
constexpr double kResultErrBound = (3.0 + 8.0 * kEpsilon) * kEpsilon;
constexpr double kCcwErrBoundA = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kCcwErrBoundB = (2.0 + 12.0 * kEpsilon) * kEpsilon;
constexpr double kCcwErrBoundC = (9.0 + 64.0 * kEpsilon) * kEpsilon * kEpsilon;

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bvirt = x - a;
    const double avirt = x - bvirt;
    y = (a - avirt) + (b - bvirt);
}

inline void two_diff(double a, double b, double& x, double& y) {
    x = a - b;
    const double bvirt = a - x;
    const double avirt = x + bvirt;
    y = (a - avirt) + (bvirt - b);
}

inline double two_diff_tail(double a, double b, double x) {
    const double bvirt = a - x;
    const double avirt = x + bvirt;
    return (a - avirt) + (bvirt - b);
}

inline void split(double a, double& hi, double& lo) {
    const double c = kSplitter * a;
    const double abig = c - a;
    hi = c - abig;
    lo = a - hi;
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    double ahi, alo, bhi, blo;
    split(a, ahi, alo);
    split(b, bhi, blo);
    const double err1 = x - ahi * bhi;
    const double err2 = err1 - alo * bhi;
    const double err3 = err2 - ahi * blo;
    y = alo * blo - err3;
}

// (a1,a0) - (b1,b0) -> (x3,x2,x1,x0)
inline void two_two_diff(double a1, double a0, double b1, double b0, double& x3, double& x2,
                         double& x1, double& x0) {
    double j, r0, i;
    two_diff(a0, b0, j, x0); // j + x0 = a0 - b0
    two_sum(a1, j, i, r0);
    double k;
    two_diff(r0, b1, k, x1);
    two_sum(i, k, x3, x2);
}

// Exact expansion sum by repeated grow-expansion; h must hold elen+flen.
// Simpler than the zero-eliminating merge and exact for these small sizes.
int expansion_sum(int elen, const double* e, int flen, const double* f, double* h) {
    int hlen = elen;
    for (int i = 0; i < elen; ++i) h[i] = e[i];
    for (int i = 0; i < flen; ++i) {
        // grow h by f[i]
        double q = f[i];
        for (int j = 0; j < hlen; ++j) {
            double sum, err;
            two_sum(q, h[j], sum, err);
            h[j] = err;
            q = sum;
        }
        h[hlen++] = q;
    }
    return hlen;
}

double expansion_estimate(int n, const double* e) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += e[i];
    return s;
}

double orient2d_adapt(Vec2 pa, Vec2 pb, Vec2 pc, double detsum) {
    const double acx = pa.x - pc.x;
    const double bcx = pb.x - pc.x;
    const double acy = pa.y - pc.y;
    const double bcy = pb.y - pc.y;

    double detleft, detlefttail, detright, detrighttail;
    two_product(acx, bcy, detleft, detlefttail);
    two_product(acy, bcx, detright, detrighttail);

    double B[4];
    two_two_diff(detleft, detlefttail, detright, detrighttail, B[3], B[2], B[1], B[0]);
    double det = expansion_estimate(4, B);
    double errbound = kCcwErrBoundB * detsum;
    if (det >= errbound || -det >= errbound) return det;

    const double acxtail = two_diff_tail(pa.x, pc.x, acx);
    const double bcxtail = two_diff_tail(pb.x, pc.x, bcx);
    const double acytail = two_diff_tail(pa.y, pc.y, acy);
    const double bcytail = two_diff_tail(pb.y, pc.y, bcy);
    if (acxtail == 0.0 && acytail == 0.0 && bcxtail == 0.0 && bcytail == 0.0) return det;

    errbound = kCcwErrBoundC * detsum + kResultErrBound * std::fabs(det);
    det += (acx * bcytail + bcy * acxtail) - (acy * bcxtail + bcx * acytail);
    if (det >= errbound || -det >= errbound) return det;

    double u[4], tmp1[8], tmp2[12], tmp3[16];
    double s1, s0, t1, t0;

    two_product(acxtail, bcy, s1, s0);
    two_product(acytail, bcx, t1, t0);
    two_two_diff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    int l1 = expansion_sum(4, B, 4, u, tmp1);

    two_product(acx, bcytail, s1, s0);
    two_product(acy, bcxtail, t1, t0);
    two_two_diff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    int l2 = expansion_sum(l1, tmp1, 4, u, tmp2);

    two_product(acxtail, bcytail, s1, s0);
    two_product(acytail, bcxtail, t1, t0);
    two_two_diff(s1, s0, t1, t0, u[3], u[2], u[1], u[0]);
    int l3 = expansion_sum(l2, tmp2, 4, u, tmp3);

    // exact sign: largest-magnitude component is the last nonzero one
    for (int i = l3 - 1; i >= 0; --i)
        if (tmp3[i] != 0.0) return tmp3[i];
    return 0.0;
}

} // namespace

double orient2d(Vec2 pa, Vec2 pb, Vec2 pc) {
    const double detleft = (pa.x - pc.x) * (pb.y - pc.y);
    const double detright = (pa.y - pc.y) * (pb.x - pc.x);
    const double det = detleft - detright;
    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return det;
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det;
        detsum = -detleft - detright;
    } else {
        return det;
    }
    const double errbound = kCcwErrBoundA * detsum;
    if (det >= errbound || -det >= errbound) return det;
    return orient2d_adapt(pa, pb, pc, detsum);
}

// ---------------------------------------------------------------------------

namespace {

inline int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Projection parameter of p onto [a,b], clamped to [0,1].
double project_param(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double n2 = norm2(d);
    if (n2 == 0.0) return 0.0;
    return std::clamp(dot(p - a, d) / n2, 0.0, 1.0);
}

} // namespace

SegIntersection segment_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    SegIntersection out;
    const double d1 = orient2d(b0, b1, a0);
    const double d2 = orient2d(b0, b1, a1);
    const double d3 = orient2d(a0, a1, b0);
    const double d4 = orient2d(a0, a1, b1);
    const int s1 = sgn(d1), s2 = sgn(d2), s3 = sgn(d3), s4 = sgn(d4);

    if (s1 == 0 && s2 == 0 && s3 == 0 && s4 == 0) {
        // collinear: overlap in the dominant axis?
        const Vec2 d = a1 - a0;
        const double n2 = norm2(d);
        if (n2 == 0.0) return out;
        const double ub0 = dot(b0 - a0, d) / n2;
        const double ub1 = dot(b1 - a0, d) / n2;
        const double lo = std::max(0.0, std::min(ub0, ub1));
        const double hi = std::min(1.0, std::max(ub0, ub1));
        if (lo > hi) return out;
        out.hit = true;
        out.collinear = true;
        out.u = lo; // first contact along a
        out.point = a0 + lo * d;
        out.w = project_param(out.point, b0, b1);
        return out;
    }

    const bool straddle_a = (s1 * s2 < 0) || (s1 == 0) || (s2 == 0);
    const bool straddle_b = (s3 * s4 < 0) || (s3 == 0) || (s4 == 0);
    if (!(straddle_a && straddle_b)) return out;

    // proper or touching crossing: parameters from the signed areas
    out.hit = true;
    out.u = (d1 == d2) ? 0.0 : d1 / (d1 - d2);
    out.w = (d3 == d4) ? 0.0 : d3 / (d3 - d4);
    out.u = std::clamp(out.u, 0.0, 1.0);
    out.w = std::clamp(out.w, 0.0, 1.0);
    out.point = a0 + out.u * (a1 - a0);
    return out;
}

std::size_t count_self_intersections(const std::vector<Vec2>& closed) {
    const std::size_t n = closed.size();
    if (n < 4) return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t i2 = (i + 1) % n;
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t j2 = (j + 1) % n;
            // skip segments sharing a vertex (adjacent in the closed loop)
            if (i == j || i2 == j || j2 == i) continue;
            if (segment_intersect(closed[i], closed[i2], closed[j], closed[j2]).hit) ++count;
        }
    }
    return count;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const double u = project_param(p, a, b);
    return norm(p - (a + u * (b - a)));
}

double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    double worst = 0.0;
    for (const Vec2& p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& q : b) best = std::min(best, norm2(p - q));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

} // namespace finfront::geom
