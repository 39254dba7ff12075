#include "finfront/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <mutex>
#include <sstream>
#include <thread>

#include "finfront/spacetime.hpp"

namespace finfront {

double Trajectory::max_f_residual() const {
    double m = 0.0;
    for (double r : f_residuals) m = std::max(m, r);
    return m;
}

std::vector<double> time_schedule(double t0, double tau, const IntegratorConfig& cfg) {
    if (!(cfg.step > 0.0)) throw validation_error("IntegratorConfig.step must be positive");
    if (!(tau > t0)) throw validation_error("time_schedule: tau must exceed t0");
    if (cfg.method != IntegratorMethod::rk4_fixed)
        throw validation_error("unsupported integrator method");
    const double span = tau - t0;
    long n = static_cast<long>(std::floor(span / cfg.step));
    while (n > 0 && t0 + static_cast<double>(n) * cfg.step >= tau) --n;
    if (n + 1 > cfg.max_steps) {
        std::ostringstream os;
        os << "time_schedule: " << n + 1 << " steps exceed max_steps=" << cfg.max_steps;
        throw validation_error(os.str());
    }
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(n) + 2);
    for (long i = 0; i <= n; ++i) times.push_back(t0 + static_cast<double>(i) * cfg.step);
    times.push_back(tau);
    return times;
}

namespace {

void check_launch(const FinslerMetric& F, Vec2 x0, Vec2 v0, double t0) {
    const double f = F.eval(t0, x0, v0);
    if (std::fabs(f - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "integrate_trajectory: launch velocity is not F-unit (F = " << f << ")";
        throw std::invalid_argument(os.str());
    }
}

// Generic per-ray path for media without a kernel form.
Trajectory integrate_generic(const FinslerMetric& F, Vec2 x0, Vec2 v0,
                             const std::vector<double>& times, bool renormalize) {
    Trajectory tr;
    const std::size_t n = times.size();
    tr.times = times;
    tr.positions.reserve(n);
    tr.velocities.reserve(n);
    tr.f_residuals.reserve(n);
    Vec2 x = x0, v = v0;
    tr.positions.push_back(x);
    tr.velocities.push_back(v);
    tr.f_residuals.push_back(std::fabs(F.eval(times[0], x, v) - 1.0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t = times[i];
        const double h = times[i + 1] - times[i];
        try {
            const Vec2 a1 = pregeodesic_rhs(F, t, x, v);
            const Vec2 xb = x + 0.5 * h * v, vb = v + 0.5 * h * a1;
            const Vec2 a2 = pregeodesic_rhs(F, t + 0.5 * h, xb, vb);
            const Vec2 xc = x + 0.5 * h * vb, vc = v + 0.5 * h * a2;
            const Vec2 a3 = pregeodesic_rhs(F, t + 0.5 * h, xc, vc);
            const Vec2 xd = x + h * vc, vd = v + h * a3;
            const Vec2 a4 = pregeodesic_rhs(F, t + h, xd, vd);
            x = x + (h / 6.0) * (v + 2.0 * vb + 2.0 * vc + vd);
            v = v + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        } catch (const error& e) {
            std::ostringstream os;
            os << "trajectory failed at t=" << t << " x=(" << x.x << "," << x.y
               << "): " << e.what();
            throw numerical_error(os.str());
        }
        double f = F.eval(times[i + 1], x, v);
        if (renormalize) {
            v = v / f;
            f = F.eval(times[i + 1], x, v);
        }
        if (!finite(x) || !finite(v) || !std::isfinite(f)) {
            std::ostringstream os;
            os << "trajectory diverged (non-finite state) at t=" << times[i + 1];
            throw numerical_error(os.str());
        }
        tr.positions.push_back(x);
        tr.velocities.push_back(v);
        tr.f_residuals.push_back(std::fabs(f - 1.0));
    }
    return tr;
}

// Kernel path: advance a contiguous ray range on the shared schedule.
void integrate_kernel_range(const kern::KernelMedium& med, const FdConfig& fd,
                            kern::Backend backend, const std::vector<double>& times,
                            const std::vector<Vec2>& x0, const std::vector<Vec2>& v0,
                            std::size_t begin, std::size_t end, bool renormalize,
                            std::vector<Trajectory>& out) {
    const std::size_t m = end - begin;
    kern::RayBatch batch(m);
    for (std::size_t i = 0; i < m; ++i) {
        batch.x1[i] = x0[begin + i].x;
        batch.x2[i] = x0[begin + i].y;
        batch.v1[i] = v0[begin + i].x;
        batch.v2[i] = v0[begin + i].y;
    }
    const std::size_t n = times.size();
    for (std::size_t i = 0; i < m; ++i) {
        Trajectory& tr = out[begin + i];
        tr.times = times;
        tr.positions.resize(n);
        tr.velocities.resize(n);
        tr.f_residuals.resize(n);
    }
    auto record = [&](std::size_t sample) {
        for (std::size_t i = 0; i < m; ++i) {
            Trajectory& tr = out[begin + i];
            tr.positions[sample] = {batch.x1[i], batch.x2[i]};
            tr.velocities[sample] = {batch.v1[i], batch.v2[i]};
            tr.f_residuals[sample] = std::fabs(batch.f[i] - 1.0);
        }
    };
    auto raise_failures = [&](double t) {
        for (std::size_t i = 0; i < m; ++i) {
            if (batch.failed[i] || !std::isfinite(batch.x1[i]) || !std::isfinite(batch.x2[i]) ||
                !std::isfinite(batch.v1[i]) || !std::isfinite(batch.v2[i])) {
                std::ostringstream os;
                os << "trajectory " << begin + i << " failed at t=" << t << " x=("
                   << batch.x1[i] << "," << batch.x2[i] << ")";
                throw numerical_error(os.str());
            }
        }
    };

    kern::eval_f(backend, med, times[0], batch);
    raise_failures(times[0]);
    record(0);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        const double h = times[s + 1] - times[s];
        kern::rk4_step(backend, med, fd.coord_step_rel, fd.cond_limit, times[s], h, batch,
                       renormalize);
        kern::eval_f(backend, med, times[s + 1], batch);
        raise_failures(times[s + 1]);
        record(s + 1);
    }
}

} // namespace

Trajectory integrate_trajectory(const FinslerMetric& F, Vec2 x0, Vec2 v0, double t0,
                                double tau, const IntegratorConfig& cfg) {
    check_launch(F, x0, v0, t0);
    const auto times = time_schedule(t0, tau, cfg);
    if (auto med = F.kernel_medium()) {
        std::vector<Trajectory> out(1);
        const kern::Backend backend = cfg.backend.value_or(kern::auto_backend());
        integrate_kernel_range(*med, F.fd(), backend, times, {x0}, {v0}, 0, 1,
                               cfg.renormalize_each_step, out);
        return std::move(out[0]);
    }
    return integrate_generic(F, x0, v0, times, cfg.renormalize_each_step);
}

std::vector<Trajectory> integrate_batch(const FinslerMetric& F, const std::vector<Vec2>& x0,
                                        const std::vector<Vec2>& v0, double t0, double tau,
                                        const IntegratorConfig& cfg) {
    if (x0.size() != v0.size())
        throw std::invalid_argument("integrate_batch: mismatched launch arrays");
    const auto times = time_schedule(t0, tau, cfg);
    const std::size_t m = x0.size();
    std::vector<Trajectory> out(m);
    if (m == 0) return out;

    const auto med = F.kernel_medium();
    const kern::Backend backend = cfg.backend.value_or(kern::auto_backend());

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunk = std::max<std::size_t>(16, (m + hw - 1) / hw);
    std::vector<std::future<void>> jobs;
    std::mutex err_mutex;
    std::exception_ptr first_error;
    for (std::size_t begin = 0; begin < m; begin += chunk) {
        const std::size_t end = std::min(m, begin + chunk);
        jobs.push_back(std::async(std::launch::async, [&, begin, end] {
            try {
                if (med) {
                    integrate_kernel_range(*med, F.fd(), backend, times, x0, v0, begin, end,
                                           cfg.renormalize_each_step, out);
                } else {
                    for (std::size_t i = begin; i < end; ++i) {
                        try {
                            out[i] = integrate_generic(F, x0[i], v0[i], times,
                                                       cfg.renormalize_each_step);
                        } catch (const error& e) {
                            std::ostringstream os;
                            os << "trajectory " << i << ": " << e.what();
                            throw numerical_error(os.str());
                        }
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }));
    }
    for (auto& j : jobs) j.wait();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

std::vector<std::pair<Vec2, Vec2>> resample(const Trajectory& traj,
                                            const std::vector<double>& query_times) {
    std::vector<std::pair<Vec2, Vec2>> out;
    out.reserve(query_times.size());
    const auto& ts = traj.times;
    if (ts.size() < 2) throw std::invalid_argument("resample: trajectory too short");
    for (double q : query_times) {
        if (q < ts.front() || q > ts.back())
            throw std::invalid_argument("resample: query time outside trajectory span");
        auto it = std::upper_bound(ts.begin(), ts.end(), q);
        std::size_t i = (it == ts.begin()) ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
        if (i + 1 >= ts.size()) i = ts.size() - 2;
        const double dt = ts[i + 1] - ts[i];
        const double s = (q - ts[i]) / dt;
        if (s == 0.0) { // exact stored sample
            out.emplace_back(traj.positions[i], traj.velocities[i]);
            continue;
        }
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        const Vec2 p = h00 * traj.positions[i] + (h10 * dt) * traj.velocities[i] +
                       h01 * traj.positions[i + 1] + (h11 * dt) * traj.velocities[i + 1];
        const double d00 = (6 * s2 - 6 * s) / dt, d10 = 3 * s2 - 4 * s + 1;
        const double d01 = (-6 * s2 + 6 * s) / dt, d11 = 3 * s2 - 2 * s;
        const Vec2 v = d00 * traj.positions[i] + d10 * traj.velocities[i] +
                       d01 * traj.positions[i + 1] + d11 * traj.velocities[i + 1];
        out.emplace_back(p, v);
    }
    return out;
}

} // namespace finfront
