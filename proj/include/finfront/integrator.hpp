#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "finfront/geometry.hpp"
#include "finfront/kernels/rk4_batch.hpp"

namespace finfront {

// A t-parametrized discrete wave ray: strictly increasing sample times with
// position, velocity, and the per-sample F-unit residual |F(t,x,v) - 1|.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec2> positions;
    std::vector<Vec2> velocities;
    std::vector<double> f_residuals;

    std::size_t size() const { return times.size(); }
    Vec2 end_position() const { return positions.back(); }
    double max_f_residual() const;
};

enum class IntegratorMethod { rk4_fixed };

struct IntegratorConfig {
    double step = 1e-3;
    IntegratorMethod method = IntegratorMethod::rk4_fixed;
    bool renormalize_each_step = false;
    long max_steps = 2000000;
    // Kernel variant; auto-detected when unset. Media without a kernel form
    // always integrate through the generic scalar path.
    std::optional<kern::Backend> backend;
};

// Shared fixed-step schedule from t0 to tau; the final step is shortened so
// the last sample lands exactly on tau.
std::vector<double> time_schedule(double t0, double tau, const IntegratorConfig& cfg);

// Integrates the pregeodesic system from an F-unit launch velocity
// (|F(t0,x0,v0) - 1| <= 1e-9 required). Classical RK4, fixed step.
Trajectory integrate_trajectory(const FinslerMetric& F, Vec2 x0, Vec2 v0, double t0,
                                double tau, const IntegratorConfig& cfg);

// Same schedule for a family of rays; rays are advanced in lockstep through
// the batched kernels when the medium has a kernel form, split across worker
// threads in index order. Results are identical for any worker count.
std::vector<Trajectory> integrate_batch(const FinslerMetric& F, const std::vector<Vec2>& x0,
                                        const std::vector<Vec2>& v0, double t0, double tau,
                                        const IntegratorConfig& cfg);

// Cubic Hermite interpolation at query times within [t0, tau]; stored sample
// times reproduce stored values exactly.
std::vector<std::pair<Vec2, Vec2>> resample(const Trajectory& traj,
                                            const std::vector<double>& query_times);

} // namespace finfront
