// AVX2 kernel variant: four rays per pack. Compiled with -mavx2 in its own
// translation unit; only reached through the runtime dispatcher.
#include "finfront/kernels/rk4_impl.hpp"

#if defined(FINFRONT_BUILD_AVX2) && defined(__AVX2__)

namespace finfront::kern::detail {

void rk4_step_avx2(const KernelMedium& med, double coord_step_rel, double cond_limit, double t,
                   double h, RayBatch& b, std::size_t begin, std::size_t end,
                   bool renormalize) {
    rk4_step_range<pack4>(med, coord_step_rel, cond_limit, t, h, b, begin, end, renormalize);
}

void eval_f_avx2(const KernelMedium& med, double t, RayBatch& b, std::size_t begin,
                 std::size_t end) {
    eval_f_range<pack4>(med, t, b, begin, end);
}

} // namespace finfront::kern::detail

#endif
