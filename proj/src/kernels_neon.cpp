// NEON kernel variant: two rays per pack (aarch64 baseline feature).
#include "finfront/kernels/rk4_impl.hpp"

#if defined(FINFRONT_BUILD_NEON) && (defined(__ARM_NEON) || defined(__aarch64__))

namespace finfront::kern::detail {

void rk4_step_neon(const KernelMedium& med, double coord_step_rel, double cond_limit, double t,
                   double h, RayBatch& b, std::size_t begin, std::size_t end,
                   bool renormalize) {
    rk4_step_range<pack2>(med, coord_step_rel, cond_limit, t, h, b, begin, end, renormalize);
}

void eval_f_neon(const KernelMedium& med, double t, RayBatch& b, std::size_t begin,
                 std::size_t end) {
    eval_f_range<pack2>(med, t, b, begin, end);
}

} // namespace finfront::kern::detail

#endif
