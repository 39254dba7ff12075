#pragma once
#include "finfront/kernels/medium.hpp"
#include "finfront/kernels/pack.hpp"

// Closed-form metric evaluation and the pregeodesic right-hand side for the
// built-in medium families, templated on the lane pack. Instantiated with
// `double` this is the scalar reference kernel; instantiated with a SIMD pack
// it advances several rays at once with the identical per-lane operation
// sequence.
//
// Conventions (n = 2, spatial indices 1..2):
//   h            base Riemannian metric (euclidean or graph-surface form)
//   F(t,x,v)     = |v|_h / V(t,x,v)
//   g_ij(t,x,v)  = 1/2 d^2(F^2)/dv_i dv_j          (fundamental tensor)
//   gamma^k_ij   = 1/2 g^{kl} (d_i g_lj + d_j g_li - d_l g_ij)
//   rhs:  sdd^k  = -g^{km} dg_mn/dt sd^n - gamma^k_mn sd^m sd^n
//                  + 1/2 (dg_mn/dt sd^m sd^n) sd^k
// Coordinate partials of g use central differences at fixed direction.

namespace finfront::kern {

template <class P> struct SymMat2P {
    P a11, a12, a22;
};

template <class P> struct Rhs2P {
    P a1, a2;
};

template <class P> inline P kc(double v) { return pack_traits<P>::splat(v); }

template <class P> inline SymMat2P<P> base_metric_p(BaseKind bk, const CoeffsP<P>& c) {
    SymMat2P<P> h;
    if (bk == BaseKind::euclidean) {
        h.a11 = kc<P>(1.0);
        h.a12 = kc<P>(0.0);
        h.a22 = kc<P>(1.0);
    } else {
        // h = I + grad z (grad z)^T
        h.a11 = kc<P>(1.0) + c.zx1 * c.zx1;
        h.a12 = c.zx1 * c.zx2;
        h.a22 = kc<P>(1.0) + c.zx2 * c.zx2;
    }
    return h;
}

// F for the built-in families. Near-zero directions are flagged: trajectory
// velocities must stay bounded away from zero.
template <class P>
inline P finsler_f_p(ProfileKind pk, BaseKind bk, const CoeffsP<P>& c, P v1, P v2,
                     typename pack_traits<P>::mask& err) {
    const P zero = kc<P>(0.0);
    const P one = kc<P>(1.0);
    const SymMat2P<P> h = base_metric_p(bk, c);
    const P hv1 = h.a11 * v1 + h.a12 * v2;
    const P hv2 = h.a12 * v1 + h.a22 * v2;
    const P A = v1 * hv1 + v2 * hv2;
    err = mask_or_(err, less_(A, kc<P>(1e-18)));
    switch (pk) {
    case ProfileKind::isotropic: {
        err = mask_or_(err, less_eq_(c.iso_c, zero));
        return sqrt_(A) / c.iso_c;
    }
    case ProfileKind::elliptical: {
        const P u = sqrt_(A); // euclidean base enforced upstream
        const P p = v1 * c.ell_cphi + v2 * c.ell_sphi;
        const P denom = c.ell_a * (one - c.ell_eps * c.ell_eps);
        err = mask_or_(err, less_eq_(denom, zero));
        const P m = u - c.ell_eps * p;
        err = mask_or_(err, less_eq_(m, zero));
        return m / denom;
    }
    case ProfileKind::matsumoto: {
        const P s = sqrt_(A);
        const P q = v1 * c.zx1 + v2 * c.zx2;
        const P D = c.mat_b * s + c.mat_c * q;
        err = mask_or_(err, less_eq_(D, kc<P>(1e-9) * (c.mat_b * s)));
        return A / D;
    }
    default:
        err = mask_or_(err, less_(zero, one)); // custom media never reach the kernels
        return zero;
    }
}

template <class P>
inline SymMat2P<P> tensor_p(ProfileKind pk, BaseKind bk, const CoeffsP<P>& c, P v1, P v2,
                            typename pack_traits<P>::mask& err) {
    const P zero = kc<P>(0.0);
    const P one = kc<P>(1.0);
    const SymMat2P<P> h = base_metric_p(bk, c);
    const P hv1 = h.a11 * v1 + h.a12 * v2;
    const P hv2 = h.a12 * v1 + h.a22 * v2;
    const P A = v1 * hv1 + v2 * hv2;
    err = mask_or_(err, less_(A, kc<P>(1e-18)));
    SymMat2P<P> g;
    switch (pk) {
    case ProfileKind::isotropic: {
        err = mask_or_(err, less_eq_(c.iso_c, zero));
        const P ic2 = one / (c.iso_c * c.iso_c);
        g.a11 = h.a11 * ic2;
        g.a12 = h.a12 * ic2;
        g.a22 = h.a22 * ic2;
        return g;
    }
    case ProfileKind::elliptical: {
        // F = (|v| - eps <v,w>) / (a (1 - eps^2)), w = (cos phi, sin phi)
        const P u2 = A;
        const P u = sqrt_(u2);
        const P p = v1 * c.ell_cphi + v2 * c.ell_sphi;
        const P denom = c.ell_a * (one - c.ell_eps * c.ell_eps);
        err = mask_or_(err, less_eq_(denom, zero));
        const P k = one / denom;
        const P m = u - c.ell_eps * p;
        err = mask_or_(err, less_eq_(m, zero));
        const P b1 = v1 / u - c.ell_eps * c.ell_cphi;
        const P b2 = v2 / u - c.ell_eps * c.ell_sphi;
        const P mu = m / u;
        const P p11 = one - (v1 * v1) / u2;
        const P p12 = -((v1 * v2) / u2);
        const P p22 = one - (v2 * v2) / u2;
        const P k2 = k * k;
        g.a11 = k2 * (b1 * b1 + mu * p11);
        g.a12 = k2 * (b1 * b2 + mu * p12);
        g.a22 = k2 * (b2 * b2 + mu * p22);
        return g;
    }
    case ProfileKind::matsumoto: {
        // F = h(v,v) / (b sqrt(h(v,v)) + c <v, grad z>)
        const P s = sqrt_(A);
        const P q = v1 * c.zx1 + v2 * c.zx2;
        const P D = c.mat_b * s + c.mat_c * q;
        err = mask_or_(err, less_eq_(D, kc<P>(1e-9) * (c.mat_b * s)));
        const P A1 = kc<P>(2.0) * hv1;
        const P A2 = kc<P>(2.0) * hv2;
        const P is = one / s;
        const P is3 = is / A; // 1/s^3 = (1/s)/A
        const P D1 = c.mat_b * (hv1 * is) + c.mat_c * c.zx1;
        const P D2 = c.mat_b * (hv2 * is) + c.mat_c * c.zx2;
        const P D11 = c.mat_b * (h.a11 * is - hv1 * hv1 * is3);
        const P D12 = c.mat_b * (h.a12 * is - hv1 * hv2 * is3);
        const P D22 = c.mat_b * (h.a22 * is - hv2 * hv2 * is3);
        const P iD = one / D;
        const P t2 = iD * iD;
        const P t3 = t2 * iD;
        const P t4 = t2 * t2;
        const P A2q = A * A;
        const P two = kc<P>(2.0);
        const P three = kc<P>(3.0);
        g.a11 = t2 * (A1 * A1 + two * (A * h.a11)) - two * (A * t3) * (A1 * D1 + A1 * D1) +
                three * (A2q * t4) * (D1 * D1) - (A2q * t3) * D11;
        g.a12 = t2 * (A1 * A2 + two * (A * h.a12)) - two * (A * t3) * (A1 * D2 + A2 * D1) +
                three * (A2q * t4) * (D1 * D2) - (A2q * t3) * D12;
        g.a22 = t2 * (A2 * A2 + two * (A * h.a22)) - two * (A * t3) * (A2 * D2 + A2 * D2) +
                three * (A2q * t4) * (D2 * D2) - (A2q * t3) * D22;
        return g;
    }
    default:
        err = mask_or_(err, less_(zero, one));
        g.a11 = g.a22 = one;
        g.a12 = zero;
        return g;
    }
}

// Pregeodesic acceleration from a 7-point coefficient stencil:
// index 0 = (t,x), 1/2 = t +- kt, 3/4 = x1 +- k1, 5/6 = x2 +- k2.
// The inv* arguments are the per-lane central-difference divisors 1/(2k).
template <class P>
inline Rhs2P<P> pregeodesic_rhs_packed(ProfileKind pk, BaseKind bk, const CoeffsP<P> st[7],
                                       P inv2kt, P inv2k1, P inv2k2, P v1, P v2,
                                       double cond_limit,
                                       typename pack_traits<P>::mask& err) {
    const P half = kc<P>(0.5);
    SymMat2P<P> g = tensor_p(pk, bk, st[0], v1, v2, err);
    SymMat2P<P> gtp = tensor_p(pk, bk, st[1], v1, v2, err);
    SymMat2P<P> gtm = tensor_p(pk, bk, st[2], v1, v2, err);
    SymMat2P<P> g1p = tensor_p(pk, bk, st[3], v1, v2, err);
    SymMat2P<P> g1m = tensor_p(pk, bk, st[4], v1, v2, err);
    SymMat2P<P> g2p = tensor_p(pk, bk, st[5], v1, v2, err);
    SymMat2P<P> g2m = tensor_p(pk, bk, st[6], v1, v2, err);

    SymMat2P<P> dt, d1, d2;
    dt.a11 = (gtp.a11 - gtm.a11) * inv2kt;
    dt.a12 = (gtp.a12 - gtm.a12) * inv2kt;
    dt.a22 = (gtp.a22 - gtm.a22) * inv2kt;
    d1.a11 = (g1p.a11 - g1m.a11) * inv2k1;
    d1.a12 = (g1p.a12 - g1m.a12) * inv2k1;
    d1.a22 = (g1p.a22 - g1m.a22) * inv2k1;
    d2.a11 = (g2p.a11 - g2m.a11) * inv2k2;
    d2.a12 = (g2p.a12 - g2m.a12) * inv2k2;
    d2.a22 = (g2p.a22 - g2m.a22) * inv2k2;

    // Conditioning of g via its (real) eigenvalues.
    const P mean = half * (g.a11 + g.a22);
    const P diff = half * (g.a11 - g.a22);
    const P rad = sqrt_(diff * diff + g.a12 * g.a12);
    const P lmin = abs_(mean - rad);
    const P lmax = abs_(mean + rad);
    const P small = min_(lmin, lmax);
    const P big = max_(lmin, lmax);
    err = mask_or_(err, less_(kc<P>(cond_limit) * small, big));

    const P det = g.a11 * g.a22 - g.a12 * g.a12;
    const P gi11 = g.a22 / det;
    const P gi12 = -(g.a12 / det);
    const P gi22 = g.a11 / det;

    // Lower-index Christoffel contractions Q_l = Gamma_{l mn} sd^m sd^n.
    const P G111 = half * d1.a11;
    const P G211 = d1.a12 - half * d2.a11;
    const P G112 = half * d2.a11;
    const P G212 = half * d1.a22;
    const P G122 = d2.a12 - half * d1.a22;
    const P G222 = half * d2.a22;
    const P v11 = v1 * v1;
    const P v12 = v1 * v2;
    const P v22 = v2 * v2;
    const P two = kc<P>(2.0);
    const P Q1 = G111 * v11 + two * (G112 * v12) + G122 * v22;
    const P Q2 = G211 * v11 + two * (G212 * v12) + G222 * v22;

    // Time terms.
    const P tv1 = dt.a11 * v1 + dt.a12 * v2;
    const P tv2 = dt.a12 * v1 + dt.a22 * v2;
    const P sdt = v1 * tv1 + v2 * tv2; // dg/dt (sd, sd)

    const P r1 = tv1 + Q1;
    const P r2 = tv2 + Q2;
    Rhs2P<P> out;
    out.a1 = -(gi11 * r1 + gi12 * r2) + half * (sdt * v1);
    out.a2 = -(gi12 * r1 + gi22 * r2) + half * (sdt * v2);
    return out;
}

} // namespace finfront::kern
