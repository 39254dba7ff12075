#pragma once
#include <array>
#include <cmath>

namespace finfront {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline bool finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Symmetric 2x2 matrix, stored as the upper triangle.
struct SymMat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;

    Vec2 mul(Vec2 v) const { return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y}; }
    // u^T A v
    double quad(Vec2 u, Vec2 v) const { return dot(u, mul(v)); }
    double det() const { return a11 * a22 - a12 * a12; }
    double trace() const { return a11 + a22; }

    static SymMat2 identity() { return {1.0, 0.0, 1.0}; }

    // Eigenvalues in ascending order (always real for symmetric input).
    std::array<double, 2> eigenvalues() const {
        const double mean = 0.5 * (a11 + a22);
        const double diff = 0.5 * (a11 - a22);
        const double rad = std::sqrt(diff * diff + a12 * a12);
        return {mean - rad, mean + rad};
    }

    // |lambda|_max / |lambda|_min; infinite for singular matrices.
    double condition_number() const {
        const auto ev = eigenvalues();
        const double lo = std::fmin(std::fabs(ev[0]), std::fabs(ev[1]));
        const double hi = std::fmax(std::fabs(ev[0]), std::fabs(ev[1]));
        return hi / lo;
    }

    SymMat2 inverse() const {
        const double d = det();
        return {a22 / d, -a12 / d, a11 / d};
    }
};

inline SymMat2 operator+(SymMat2 a, SymMat2 b) { return {a.a11 + b.a11, a.a12 + b.a12, a.a22 + b.a22}; }
inline SymMat2 operator-(SymMat2 a, SymMat2 b) { return {a.a11 - b.a11, a.a12 - b.a12, a.a22 - b.a22}; }
inline SymMat2 operator*(double s, SymMat2 a) { return {s * a.a11, s * a.a12, s * a.a22}; }

// Dense 3x3 matrix for the spacetime tensor (diag(1, -g) blocks and tests).
struct Mat3 {
    double m[3][3] = {};

    std::array<double, 3> mul(const std::array<double, 3>& v) const {
        std::array<double, 3> r{};
        for (int i = 0; i < 3; ++i)
            r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
        return r;
    }
    double quad(const std::array<double, 3>& u, const std::array<double, 3>& v) const {
        const auto mv = mul(v);
        return u[0] * mv[0] + u[1] * mv[1] + u[2] * mv[2];
    }
};

} // namespace finfront
