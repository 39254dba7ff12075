#pragma once
#include "finfront/kernels/rhs_eval.hpp"
#include "finfront/kernels/rk4_batch.hpp"

// Pack-templated RK4 step body. Every variant (double, AVX2, NEON) runs this
// exact operation sequence, so lanes agree bit for bit across variants.

namespace finfront::kern::detail {

template <class P>
inline void rk4_step_range(const KernelMedium& med, double coord_step_rel, double cond_limit,
                           double t, double h, RayBatch& b, std::size_t begin, std::size_t end,
                           bool renormalize) {
    using T = pack_traits<P>;
    constexpr std::size_t W = T::width;
    const P h2 = T::splat(0.5 * h);
    const P hh = T::splat(h);
    const P sixth = T::splat(h / 6.0);
    const P two = T::splat(2.0);
    const double tm = t + 0.5 * h;
    const double te = t + h;

    for (std::size_t i = begin; i + W <= end; i += W) {
        P x1 = T::load(&b.x1[i]);
        P x2 = T::load(&b.x2[i]);
        P v1 = T::load(&b.v1[i]);
        P v2 = T::load(&b.v2[i]);
        typename T::mask err = T::mask_false();

        const Rhs2P<P> a1 = pregeodesic_rhs_eval<P>(med, coord_step_rel, cond_limit, t, x1, x2,
                                                    v1, v2, err);
        const P x1b = x1 + h2 * v1;
        const P x2b = x2 + h2 * v2;
        const P v1b = v1 + h2 * a1.a1;
        const P v2b = v2 + h2 * a1.a2;
        const Rhs2P<P> a2 = pregeodesic_rhs_eval<P>(med, coord_step_rel, cond_limit, tm, x1b,
                                                    x2b, v1b, v2b, err);
        const P x1c = x1 + h2 * v1b;
        const P x2c = x2 + h2 * v2b;
        const P v1c = v1 + h2 * a2.a1;
        const P v2c = v2 + h2 * a2.a2;
        const Rhs2P<P> a3 = pregeodesic_rhs_eval<P>(med, coord_step_rel, cond_limit, tm, x1c,
                                                    x2c, v1c, v2c, err);
        const P x1d = x1 + hh * v1c;
        const P x2d = x2 + hh * v2c;
        const P v1d = v1 + hh * a3.a1;
        const P v2d = v2 + hh * a3.a2;
        const Rhs2P<P> a4 = pregeodesic_rhs_eval<P>(med, coord_step_rel, cond_limit, te, x1d,
                                                    x2d, v1d, v2d, err);

        x1 = x1 + sixth * (v1 + two * v1b + two * v1c + v1d);
        x2 = x2 + sixth * (v2 + two * v2b + two * v2c + v2d);
        v1 = v1 + sixth * (a1.a1 + two * a2.a1 + two * a3.a1 + a4.a1);
        v2 = v2 + sixth * (a1.a2 + two * a2.a2 + two * a3.a2 + a4.a2);

        if (renormalize) {
            const P fv = finsler_f_eval<P>(med, te, x1, x2, v1, v2, err);
            v1 = v1 / fv;
            v2 = v2 / fv;
        }

        T::store(&b.x1[i], x1);
        T::store(&b.x2[i], x2);
        T::store(&b.v1[i], v1);
        T::store(&b.v2[i], v2);
        if (mask_any(err)) {
            const std::uint32_t bits = mask_bits(err);
            for (std::size_t w = 0; w < W; ++w)
                if (bits & (1u << w)) b.failed[i + w] = 1;
        }
    }
}

template <class P>
inline void eval_f_range(const KernelMedium& med, double t, RayBatch& b, std::size_t begin,
                         std::size_t end) {
    using T = pack_traits<P>;
    constexpr std::size_t W = T::width;
    for (std::size_t i = begin; i + W <= end; i += W) {
        typename T::mask err = T::mask_false();
        const P fv = finsler_f_eval<P>(med, t, T::load(&b.x1[i]), T::load(&b.x2[i]),
                                       T::load(&b.v1[i]), T::load(&b.v2[i]), err);
        T::store(&b.f[i], fv);
        if (mask_any(err)) {
            const std::uint32_t bits = mask_bits(err);
            for (std::size_t w = 0; w < W; ++w)
                if (bits & (1u << w)) b.failed[i + w] = 1;
        }
    }
}

} // namespace finfront::kern::detail
