#include "finfront/kernels/rk4_batch.hpp"

namespace finfront::kern {

bool backend_available(Backend b) {
    switch (b) {
    case Backend::scalar:
        return true;
    case Backend::avx2:
#if defined(FINFRONT_BUILD_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Backend::neon:
#if defined(FINFRONT_BUILD_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Backend auto_backend() {
    if (backend_available(Backend::avx2)) return Backend::avx2;
    if (backend_available(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "?";
}

void rk4_step(Backend backend, const KernelMedium& med, double coord_step_rel,
              double cond_limit, double t, double h, RayBatch& batch, bool renormalize) {
    const std::size_t n = batch.size();
    std::size_t wide = 0;
#if defined(FINFRONT_BUILD_AVX2)
    if (backend == Backend::avx2) {
        wide = n - n % 4;
        detail::rk4_step_avx2(med, coord_step_rel, cond_limit, t, h, batch, 0, wide,
                              renormalize);
    }
#endif
#if defined(FINFRONT_BUILD_NEON)
    if (backend == Backend::neon) {
        wide = n - n % 2;
        detail::rk4_step_neon(med, coord_step_rel, cond_limit, t, h, batch, 0, wide,
                              renormalize);
    }
#endif
    detail::rk4_step_scalar(med, coord_step_rel, cond_limit, t, h, batch, wide, n, renormalize);
}

void eval_f(Backend backend, const KernelMedium& med, double t, RayBatch& batch) {
    const std::size_t n = batch.size();
    std::size_t wide = 0;
#if defined(FINFRONT_BUILD_AVX2)
    if (backend == Backend::avx2) {
        wide = n - n % 4;
        detail::eval_f_avx2(med, t, batch, 0, wide);
    }
#endif
#if defined(FINFRONT_BUILD_NEON)
    if (backend == Backend::neon) {
        wide = n - n % 2;
        detail::eval_f_neon(med, t, batch, 0, wide);
    }
#endif
    detail::eval_f_scalar(med, t, batch, wide, n);
}

} // namespace finfront::kern
