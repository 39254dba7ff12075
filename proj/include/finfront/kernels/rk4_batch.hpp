#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

#include "finfront/kernels/medium.hpp"

namespace finfront::kern {

// Structure-of-arrays ray state advanced in lockstep on a shared schedule.
struct RayBatch {
    std::vector<double> x1, x2, v1, v2;
    std::vector<double> f;            // F(t, x, v) per ray, filled by eval_f
    std::vector<std::uint8_t> failed; // sticky per-ray failure flag

    explicit RayBatch(std::size_t n) : x1(n), x2(n), v1(n), v2(n), f(n), failed(n, 0) {}
    std::size_t size() const { return x1.size(); }
};

enum class Backend { scalar, avx2, neon };

// Widest variant compiled in and supported by this CPU.
Backend auto_backend();
bool backend_available(Backend b);
const char* backend_name(Backend b);

// One classical RK4 step t -> t+h of (x, v) with the pregeodesic acceleration.
// Failures (inadmissible medium values, ill-conditioned tensors, non-finite
// states) set batch.failed; failed rays keep stepping on garbage values and
// must be checked by the caller after each step.
void rk4_step(Backend backend, const KernelMedium& med, double coord_step_rel,
              double cond_limit, double t, double h, RayBatch& batch, bool renormalize);

// Fills batch.f with F(t, x, v).
void eval_f(Backend backend, const KernelMedium& med, double t, RayBatch& batch);

namespace detail {
void rk4_step_scalar(const KernelMedium&, double, double, double, double, RayBatch&,
                     std::size_t, std::size_t, bool);
void eval_f_scalar(const KernelMedium&, double, RayBatch&, std::size_t, std::size_t);
#if defined(FINFRONT_BUILD_AVX2)
void rk4_step_avx2(const KernelMedium&, double, double, double, double, RayBatch&,
                   std::size_t, std::size_t, bool);
void eval_f_avx2(const KernelMedium&, double, RayBatch&, std::size_t, std::size_t);
#endif
#if defined(FINFRONT_BUILD_NEON)
void rk4_step_neon(const KernelMedium&, double, double, double, double, RayBatch&,
                   std::size_t, std::size_t, bool);
void eval_f_neon(const KernelMedium&, double, RayBatch&, std::size_t, std::size_t);
#endif
} // namespace detail

} // namespace finfront::kern
