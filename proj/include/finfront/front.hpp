#pragma once
#include <functional>
#include <vector>

#include "finfront/geometry.hpp"
#include "finfront/integrator.hpp"

// Front propagation pipeline: parametrize the initial front, launch
// trajectories orthogonally, integrate the wavemap, drop endpoints that are
// no longer time-minimizing (first-intersection cut-point filter), and
// interpolate the surviving endpoints into the next front.

namespace finfront {

// Closed curve alpha(theta) with tangent, over [domain_begin, domain_end).
// `orientation` is the required sign of det[v | tangent] for outward launch
// velocities (+1 for a counterclockwise parametrization).
struct FrontParametrization {
    std::function<Vec2(double)> position;
    std::function<Vec2(double)> tangent;
    double domain_begin = 0.0;
    double domain_end = 1.0;
    int orientation = +1;

    static FrontParametrization circle(Vec2 center, double radius);
    static FrontParametrization ellipse(Vec2 center, double semi_x, double semi_y,
                                        double angle);
    // r(theta) > 0 around a center, counterclockwise. dradius may be empty
    // (central differences are used for the tangent then).
    static FrontParametrization polar(std::function<double(double)> radius,
                                      std::function<double(double)> dradius, Vec2 center);
    // Periodic chordal Catmull-Rom through the given closed point loop.
    static FrontParametrization from_points(const std::vector<Vec2>& points, int orientation);
};

// Uniform parameter samples theta_l = begin + span * l / m, l = 0..m-1.
std::vector<double> sample_front(const FrontParametrization& fp, int m);

struct OrthogonalLaunch {
    Vec2 velocity;          // F-unit, g-orthogonal to the front, outward
    double ortho_residual;  // |g_v(v, tangent/|tangent|)|
    double f_residual;      // |F(v) - 1|
    int roots_found;        // candidate directions located on the indicatrix
};

// Solves g_v(v, alpha') = 0 with F(v) = 1 and the orientation-determined
// outward sign. Candidate directions are scanned on a 256-point angular grid
// and refined by bisection.
OrthogonalLaunch orthogonal_outward_velocity(const FinslerMetric& F, double t0,
                                             const FrontParametrization& fp, double theta);

struct Wavemap {
    std::vector<double> thetas;
    std::vector<Vec2> launch_points;
    std::vector<Vec2> launch_velocities;
    std::vector<double> ortho_residuals;
    std::vector<Trajectory> trajectories;
    double launch_time = 0.0;
    double final_time = 0.0;
};

Wavemap propagate(const FinslerMetric& F, const FrontParametrization& fp, double t0,
                  double tau, int m, const IntegratorConfig& cfg);

struct FilterResult {
    std::vector<int> surviving;  // launch indices in the wavefront (sorted)
    std::vector<int> removed;
    std::size_t crossings_found = 0;
};

// First-intersection cut-point filter. For each trajectory, its first
// crossing with every other trajectory is located on the shared-time
// polylines; the endpoint survives iff this trajectory arrived strictly
// earlier at each such crossing. Arrivals within one time step of each other
// count as ties and keep both.
FilterResult filter_time_minimizing(const Wavemap& wm);

struct Wavefront {
    double time = 0.0;
    std::vector<Vec2> points;           // surviving endpoints, launch order
    std::vector<int> surviving_indices; // subset of launch indices
    bool dispersion_warning = false;
    double max_gap = 0.0;
    double dispersion_limit = 0.0;

    // Dense closed-curve sampling through the points (periodic Catmull-Rom).
    std::vector<Vec2> sample(std::size_t n) const;
    FrontParametrization as_parametrization(int orientation) const;
};

// Orders the surviving endpoints, closes the polyline, and flags refinement
// when consecutive surviving endpoints spread further than dispersion_limit
// (pass 0 for the default: 4x the median gap of the unfiltered endpoints).
Wavefront interpolate_front(const Wavemap& wm, const std::vector<int>& surviving,
                            double dispersion_limit);

struct PropagationOptions {
    int points = 64;
    IntegratorConfig integrator;
    double dispersion_limit = 0.0;       // 0: automatic
    bool assert_no_intersections = false; // error out instead of filtering
};

struct EpochResult {
    Wavemap wavemap;
    FilterResult filter;
    Wavefront front;
};

// Runs the full pipeline `epochs` times, re-parametrizing each interpolated
// front as the next initial front; launch times accumulate from t0.
std::vector<EpochResult> advance_epochs(const FinslerMetric& F,
                                        const FrontParametrization& fp0, double t0,
                                        int epochs, double tau_per_epoch,
                                        const PropagationOptions& opts);

} // namespace finfront
