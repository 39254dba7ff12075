#pragma once
#include "finfront/geometry.hpp"

// The spacetime layer: the Lorentz-Finsler metric G on R x N,
//   G(t,x)(v0, v) = (v0)^2 - F(t,x,v)^2,
// its fundamental tensor diag(1, -g), formal Christoffel symbols, and the
// right-hand sides of the two geodesic ODE formulations. The t-parametrized
// form (pregeodesic_rhs) is the production path; the affine form exists as a
// cross-check oracle.

namespace finfront {

struct SpacetimePoint {
    double t = 0.0;
    Vec2 x;
};

struct SpacetimeVector {
    double v0 = 0.0;
    Vec2 v;
};

// gamma^k_ij over spacetime indices (0 = time), symmetric in the lower pair.
struct SpacetimeChristoffel {
    double s[3][3][3] = {};
};

// (v0)^2 - F^2. Defined for all vhat; G((lambda, 0)) = lambda^2.
double G_eval(const FinslerMetric& F, SpacetimePoint p, SpacetimeVector vhat);

// The unique v0 > 0 with (v0, v) lightlike: v0 = F(t,x,v). Requires v != 0.
double lightlike_lift(const FinslerMetric& F, double t, Vec2 x, Vec2 v);

// Fundamental tensor of G at (p, vhat): block matrix diag(1, -g_v). v != 0.
Mat3 g_hat(const FinslerMetric& F, SpacetimePoint p, SpacetimeVector vhat);

// Formal Christoffel symbols of G: coordinate partials of g_hat at fixed vhat
// by central differences (or the closed-form tensor when available).
SpacetimeChristoffel christoffel_spacetime(const FinslerMetric& F, SpacetimePoint p,
                                           SpacetimeVector vhat);

// t-parametrized pregeodesic acceleration of the spatial curve:
//   sdd^k = -g^{km} dg_mn/dt sd^n - gamma^k_mn sd^m sd^n
//           + 1/2 (dg_mn/dt sd^m sd^n) sd^k
// with g, gamma the fundamental tensor and formal Christoffel symbols of F
// at (t, sigma, sigmadot).
Vec2 pregeodesic_rhs(const FinslerMetric& F, double t, Vec2 sigma, Vec2 sigmadot);

// Affinely parametrized geodesic acceleration: gdd^k = -gamma^k_ij gd^i gd^j.
SpacetimeVector geodesic_rhs_affine(const FinslerMetric& F, SpacetimePoint p,
                                    SpacetimeVector vhat);

} // namespace finfront
