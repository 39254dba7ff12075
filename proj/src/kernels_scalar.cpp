// Scalar reference kernel: the width-1 instantiation of the shared template.
#include "finfront/kernels/rk4_impl.hpp"

namespace finfront::kern::detail {

void rk4_step_scalar(const KernelMedium& med, double coord_step_rel, double cond_limit,
                     double t, double h, RayBatch& b, std::size_t begin, std::size_t end,
                     bool renormalize) {
    rk4_step_range<double>(med, coord_step_rel, cond_limit, t, h, b, begin, end, renormalize);
}

void eval_f_scalar(const KernelMedium& med, double t, RayBatch& b, std::size_t begin,
                   std::size_t end) {
    eval_f_range<double>(med, t, b, begin, end);
}

} // namespace finfront::kern::detail
