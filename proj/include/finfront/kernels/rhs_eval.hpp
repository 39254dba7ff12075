#pragma once
#include <cmath>

#include "finfront/kernels/tensor_eval.hpp"

// Builds the 7-point coefficient stencil for a ray batch and evaluates the
// pregeodesic right-hand side. Coefficient providers run lane-scalar (they
// may call libm); everything after that is pack arithmetic. All lanes share
// the same time because trajectories advance on a common schedule.

namespace finfront::kern {

template <class P>
inline Rhs2P<P> pregeodesic_rhs_eval(const KernelMedium& med, double coord_step_rel,
                                     double cond_limit, double t, P x1, P x2, P v1, P v2,
                                     typename pack_traits<P>::mask& err) {
    constexpr int W = pack_traits<P>::width;
    double bx1[W], bx2[W];
    pack_traits<P>::store(bx1, x1);
    pack_traits<P>::store(bx2, x2);

    const double at = std::fabs(t);
    const double kt = coord_step_rel * (at > 1.0 ? at : 1.0);

    Coeffs lane[7][W];
    double ik1[W], ik2[W];
    for (int w = 0; w < W; ++w) {
        const double a1 = std::fabs(bx1[w]);
        const double a2 = std::fabs(bx2[w]);
        const double k1 = coord_step_rel * (a1 > 1.0 ? a1 : 1.0);
        const double k2 = coord_step_rel * (a2 > 1.0 ? a2 : 1.0);
        ik1[w] = 1.0 / (2.0 * k1);
        ik2[w] = 1.0 / (2.0 * k2);
        med.coeffs(t, bx1[w], bx2[w], lane[0][w]);
        if (med.time_dependent) {
            med.coeffs(t + kt, bx1[w], bx2[w], lane[1][w]);
            med.coeffs(t - kt, bx1[w], bx2[w], lane[2][w]);
        } else {
            lane[1][w] = lane[0][w];
            lane[2][w] = lane[0][w];
        }
        med.coeffs(t, bx1[w] + k1, bx2[w], lane[3][w]);
        med.coeffs(t, bx1[w] - k1, bx2[w], lane[4][w]);
        med.coeffs(t, bx1[w], bx2[w] + k2, lane[5][w]);
        med.coeffs(t, bx1[w], bx2[w] - k2, lane[6][w]);
    }

    CoeffsP<P> st[7];
    for (int s = 0; s < 7; ++s) st[s] = pack_coeffs<P>(lane[s]);
    const P inv2kt = pack_traits<P>::splat(1.0 / (2.0 * kt));
    const P inv2k1 = pack_traits<P>::load(ik1);
    const P inv2k2 = pack_traits<P>::load(ik2);
    return pregeodesic_rhs_packed(med.profile, med.base, st, inv2kt, inv2k1, inv2k2, v1, v2,
                                  cond_limit, err);
}

// F(t,x,v) for a batch; used for launch checks, residual records, and the
// optional renormalization step.
template <class P>
inline P finsler_f_eval(const KernelMedium& med, double t, P x1, P x2, P v1, P v2,
                        typename pack_traits<P>::mask& err) {
    constexpr int W = pack_traits<P>::width;
    double bx1[W], bx2[W];
    pack_traits<P>::store(bx1, x1);
    pack_traits<P>::store(bx2, x2);
    Coeffs lane[W];
    for (int w = 0; w < W; ++w) med.coeffs(t, bx1[w], bx2[w], lane[w]);
    const CoeffsP<P> c = pack_coeffs<P>(lane);
    return finsler_f_p(med.profile, med.base, c, v1, v2, err);
}

} // namespace finfront::kern
