#include "finfront/spacetime.hpp"

#include <cmath>
#include <sstream>

#include "finfront/kernels/rhs_eval.hpp"

namespace finfront {

namespace {

void require_spatial(Vec2 v, const char* who) {
    if (norm2(v) < 1e-18) {
        std::ostringstream os;
        os << who << ": spatial velocity magnitude below 1e-9 (|v| = " << norm(v) << ")";
        throw numerical_error(os.str());
    }
}

SymMat2 checked_inverse(const SymMat2& g, double cond_limit, const char* who) {
    const double cond = g.condition_number();
    if (!(cond <= cond_limit)) {
        std::ostringstream os;
        os << who << ": fundamental tensor condition number " << cond << " exceeds "
           << cond_limit;
        throw numerical_error(os.str());
    }
    return g.inverse();
}

struct TensorPartials {
    SymMat2 g, dt, dx1, dx2;
};

// Coordinate partials of g at fixed direction, central differences with the
// configured relative step.
TensorPartials tensor_partials(const FinslerMetric& F, double t, Vec2 x, Vec2 v) {
    TensorPartials out;
    out.g = F.fundamental_tensor(t, x, v);
    const double cr = F.fd().coord_step_rel;
    const double kt = cr * (std::fabs(t) > 1.0 ? std::fabs(t) : 1.0);
    const double k1 = cr * (std::fabs(x.x) > 1.0 ? std::fabs(x.x) : 1.0);
    const double k2 = cr * (std::fabs(x.y) > 1.0 ? std::fabs(x.y) : 1.0);
    if (F.time_dependent()) {
        const SymMat2 gp = F.fundamental_tensor(t + kt, x, v);
        const SymMat2 gm = F.fundamental_tensor(t - kt, x, v);
        out.dt = (1.0 / (2.0 * kt)) * (gp - gm);
    }
    const SymMat2 g1p = F.fundamental_tensor(t, {x.x + k1, x.y}, v);
    const SymMat2 g1m = F.fundamental_tensor(t, {x.x - k1, x.y}, v);
    out.dx1 = (1.0 / (2.0 * k1)) * (g1p - g1m);
    const SymMat2 g2p = F.fundamental_tensor(t, {x.x, x.y + k2}, v);
    const SymMat2 g2m = F.fundamental_tensor(t, {x.x, x.y - k2}, v);
    out.dx2 = (1.0 / (2.0 * k2)) * (g2p - g2m);
    return out;
}

} // namespace

double G_eval(const FinslerMetric& F, SpacetimePoint p, SpacetimeVector vhat) {
    const double f = F.eval(p.t, p.x, vhat.v);
    return vhat.v0 * vhat.v0 - f * f;
}

double lightlike_lift(const FinslerMetric& F, double t, Vec2 x, Vec2 v) {
    if (v.x == 0.0 && v.y == 0.0)
        throw std::invalid_argument("lightlike_lift: zero spatial vector");
    return F.eval(t, x, v);
}

Mat3 g_hat(const FinslerMetric& F, SpacetimePoint p, SpacetimeVector vhat) {
    if (vhat.v.x == 0.0 && vhat.v.y == 0.0)
        throw std::invalid_argument("g_hat: undefined for vanishing spatial part");
    const SymMat2 g = F.fundamental_tensor(p.t, p.x, vhat.v);
    Mat3 m;
    m.m[0][0] = 1.0;
    m.m[1][1] = -g.a11;
    m.m[1][2] = -g.a12;
    m.m[2][1] = -g.a12;
    m.m[2][2] = -g.a22;
    return m;
}

SpacetimeChristoffel christoffel_spacetime(const FinslerMetric& F, SpacetimePoint p,
                                           SpacetimeVector vhat) {
    require_spatial(vhat.v, "christoffel_spacetime");
    const TensorPartials tp = tensor_partials(F, p.t, p.x, vhat.v);
    const SymMat2 gi = checked_inverse(tp.g, F.fd().cond_limit, "christoffel_spacetime");

    // D[r][i][j] = d(ghat_ij)/dx^r; only the spatial block of ghat varies.
    double D[3][3][3] = {};
    const SymMat2* parts[3] = {&tp.dt, &tp.dx1, &tp.dx2};
    for (int r = 0; r < 3; ++r) {
        D[r][1][1] = -parts[r]->a11;
        D[r][1][2] = D[r][2][1] = -parts[r]->a12;
        D[r][2][2] = -parts[r]->a22;
    }
    // ghat^{-1} = diag(1, -g^{-1})
    double gih[3][3] = {};
    gih[0][0] = 1.0;
    gih[1][1] = -gi.a11;
    gih[1][2] = gih[2][1] = -gi.a12;
    gih[2][2] = -gi.a22;

    SpacetimeChristoffel out;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                double acc = 0.0;
                for (int r = 0; r < 3; ++r)
                    acc += gih[k][r] * (D[i][r][j] + D[j][r][i] - D[r][i][j]);
                out.s[k][i][j] = 0.5 * acc;
                out.s[k][j][i] = out.s[k][i][j];
            }
    return out;
}

Vec2 pregeodesic_rhs(const FinslerMetric& F, double t, Vec2 sigma, Vec2 sigmadot) {
    require_spatial(sigmadot, "pregeodesic_rhs");
    if (auto km = F.kernel_medium()) {
        bool err = false;
        const auto r = kern::pregeodesic_rhs_eval<double>(*km, F.fd().coord_step_rel,
                                                          F.fd().cond_limit, t, sigma.x,
                                                          sigma.y, sigmadot.x, sigmadot.y, err);
        if (err || !std::isfinite(r.a1) || !std::isfinite(r.a2)) {
            std::ostringstream os;
            os << "pregeodesic_rhs failed at t=" << t << " x=(" << sigma.x << "," << sigma.y
               << ") v=(" << sigmadot.x << "," << sigmadot.y << ")";
            throw numerical_error(os.str());
        }
        return {r.a1, r.a2};
    }

    // Generic route for media without a kernel form.
    const TensorPartials tp = tensor_partials(F, t, sigma, sigmadot);
    const SymMat2 gi = checked_inverse(tp.g, F.fd().cond_limit, "pregeodesic_rhs");
    const SymMat2&d1 = tp.dx1, &d2 = tp.dx2;
    const double v1 = sigmadot.x, v2 = sigmadot.y;

    // Gamma_{l mn} sd^m sd^n
    const double G111 = 0.5 * d1.a11;
    const double G211 = d1.a12 - 0.5 * d2.a11;
    const double G112 = 0.5 * d2.a11;
    const double G212 = 0.5 * d1.a22;
    const double G122 = d2.a12 - 0.5 * d1.a22;
    const double G222 = 0.5 * d2.a22;
    const Vec2 Q{G111 * v1 * v1 + 2.0 * G112 * v1 * v2 + G122 * v2 * v2,
                 G211 * v1 * v1 + 2.0 * G212 * v1 * v2 + G222 * v2 * v2};

    const Vec2 tv = tp.dt.mul(sigmadot);
    const double sdt = dot(sigmadot, tv);
    const Vec2 r = -1.0 * gi.mul(tv + Q) + 0.5 * sdt * sigmadot;
    if (!finite(r)) {
        std::ostringstream os;
        os << "pregeodesic_rhs (generic) non-finite at t=" << t << " x=(" << sigma.x << ","
           << sigma.y << ")";
        throw numerical_error(os.str());
    }
    return r;
}

SpacetimeVector geodesic_rhs_affine(const FinslerMetric& F, SpacetimePoint p,
                                    SpacetimeVector vhat) {
    require_spatial(vhat.v, "geodesic_rhs_affine");
    const SpacetimeChristoffel ch = christoffel_spacetime(F, p, vhat);
    const double gd[3] = {vhat.v0, vhat.v.x, vhat.v.y};
    double acc[3] = {};
    for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += ch.s[k][i][j] * gd[i] * gd[j];
        acc[k] = -s;
    }
    return {acc[0], {acc[1], acc[2]}};
}

} // namespace finfront
