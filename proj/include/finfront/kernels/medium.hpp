#pragma once
#include <functional>

#include "finfront/kernels/pack.hpp"

namespace finfront::kern {

// Built-in medium families with closed-form direction dependence. Anything
// else (user callbacks, forced numeric Hessians) goes through the generic
// finite-difference path instead of the batched kernels.
enum class ProfileKind { isotropic, elliptical, matsumoto, custom };
enum class BaseKind { euclidean, graph_surface };

// Point data for one (t, x): everything the tensor formulas need besides the
// direction. Filled lane-scalar by a coefficient provider; transcendentals
// (sin/cos/exp in user expressions) happen only here.
struct Coeffs {
    double iso_c = 1.0;                            // isotropic speed c(t,x)
    double ell_a = 1.0, ell_eps = 0.0;             // elliptical a, eps
    double ell_cphi = 1.0, ell_sphi = 0.0;         // cos/sin of orientation phi
    double mat_b = 1.0, mat_c = 0.0;               // matsumoto b, signed c
    double zx1 = 0.0, zx2 = 0.0;                   // height gradient (graph base)
};

using CoeffFn = std::function<void(double t, double x1, double x2, Coeffs&)>;

// Medium in kernel form: family tags plus the coefficient provider.
struct KernelMedium {
    ProfileKind profile = ProfileKind::isotropic;
    BaseKind base = BaseKind::euclidean;
    CoeffFn coeffs;
    bool time_dependent = true;
};

// Lane-packed coefficients.
template <class P> struct CoeffsP {
    P iso_c;
    P ell_a, ell_eps, ell_cphi, ell_sphi;
    P mat_b, mat_c;
    P zx1, zx2;
};

template <class P> inline CoeffsP<P> pack_coeffs(const Coeffs* lanes) {
    constexpr int W = pack_traits<P>::width;
    double buf[W];
    CoeffsP<P> out;
    auto gather = [&](double Coeffs::*field) {
        for (int w = 0; w < W; ++w) buf[w] = lanes[w].*field;
        return pack_traits<P>::load(buf);
    };
    out.iso_c = gather(&Coeffs::iso_c);
    out.ell_a = gather(&Coeffs::ell_a);
    out.ell_eps = gather(&Coeffs::ell_eps);
    out.ell_cphi = gather(&Coeffs::ell_cphi);
    out.ell_sphi = gather(&Coeffs::ell_sphi);
    out.mat_b = gather(&Coeffs::mat_b);
    out.mat_c = gather(&Coeffs::mat_c);
    out.zx1 = gather(&Coeffs::zx1);
    out.zx2 = gather(&Coeffs::zx2);
    return out;
}

} // namespace finfront::kern
