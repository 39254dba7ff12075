#include "finfront/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "finfront/kernels/tensor_eval.hpp"

namespace finfront {

namespace {

const char* describe(kern::ProfileKind k) {
    switch (k) {
    case kern::ProfileKind::isotropic: return "isotropic";
    case kern::ProfileKind::elliptical: return "elliptical";
    case kern::ProfileKind::matsumoto: return "matsumoto";
    default: return "custom";
    }
}

std::string point_str(double t, Vec2 x, Vec2 v) {
    std::ostringstream os;
    os << "t=" << t << " x=(" << x.x << "," << x.y << ") v=(" << v.x << "," << v.y << ")";
    return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// RiemannianMetricField

RiemannianMetricField RiemannianMetricField::euclidean() {
    RiemannianMetricField m;
    m.kind_ = kern::BaseKind::euclidean;
    return m;
}

RiemannianMetricField RiemannianMetricField::graph_surface(HeightFn z, GradFn grad) {
    RiemannianMetricField m;
    m.kind_ = kern::BaseKind::graph_surface;
    m.height_ = std::move(z);
    m.grad_ = std::move(grad);
    return m;
}

RiemannianMetricField RiemannianMetricField::graph_surface(HeightFn z) {
    auto zc = z;
    GradFn grad = [zc](Vec2 x) -> Vec2 {
        const double h1 = 6e-6 * (std::fabs(x.x) > 1.0 ? std::fabs(x.x) : 1.0);
        const double h2 = 6e-6 * (std::fabs(x.y) > 1.0 ? std::fabs(x.y) : 1.0);
        return {(zc({x.x + h1, x.y}) - zc({x.x - h1, x.y})) / (2.0 * h1),
                (zc({x.x, x.y + h2}) - zc({x.x, x.y - h2})) / (2.0 * h2)};
    };
    return graph_surface(std::move(z), std::move(grad));
}

SymMat2 RiemannianMetricField::eval(Vec2 x) const {
    if (kind_ == kern::BaseKind::euclidean) return SymMat2::identity();
    const Vec2 g = grad_(x);
    if (!finite(g))
        throw numerical_error("graph_surface metric: non-finite height gradient at x=(" +
                              std::to_string(x.x) + "," + std::to_string(x.y) + ")");
    return {1.0 + g.x * g.x, g.x * g.y, 1.0 + g.y * g.y};
}

double RiemannianMetricField::inner(Vec2 x, Vec2 v, Vec2 u) const {
    return eval(x).quad(v, u);
}

double RiemannianMetricField::height(Vec2 x) const {
    return kind_ == kern::BaseKind::euclidean ? 0.0 : height_(x);
}

Vec2 RiemannianMetricField::height_grad(Vec2 x) const {
    return kind_ == kern::BaseKind::euclidean ? Vec2{0.0, 0.0} : grad_(x);
}

// ---------------------------------------------------------------------------
// SpeedProfile

SpeedProfile SpeedProfile::isotropic(double c) {
    auto p = isotropic([c](double, Vec2) { return c; }, false);
    return p;
}

SpeedProfile SpeedProfile::isotropic(CoeffFn c, bool time_dependent) {
    SpeedProfile p;
    p.kind_ = kern::ProfileKind::isotropic;
    p.c_ = std::move(c);
    p.time_dependent_ = time_dependent;
    return p;
}

SpeedProfile SpeedProfile::elliptical(double a, double eps, double phi) {
    return elliptical([a](double, Vec2) { return a; }, [eps](double, Vec2) { return eps; },
                      [phi](double, Vec2) { return phi; }, false);
}

SpeedProfile SpeedProfile::elliptical(CoeffFn a, CoeffFn eps, CoeffFn phi,
                                      bool time_dependent) {
    SpeedProfile p;
    p.kind_ = kern::ProfileKind::elliptical;
    p.a_ = std::move(a);
    p.eps_ = std::move(eps);
    p.phi_ = std::move(phi);
    p.time_dependent_ = time_dependent;
    return p;
}

SpeedProfile SpeedProfile::matsumoto(double b, double c, int sign, GradFn grad) {
    return matsumoto([b](double, Vec2) { return b; }, [c](double, Vec2) { return c; }, sign,
                     std::move(grad), false);
}

SpeedProfile SpeedProfile::matsumoto(CoeffFn b, CoeffFn c, int sign, GradFn grad,
                                     bool time_dependent) {
    SpeedProfile p;
    p.kind_ = kern::ProfileKind::matsumoto;
    p.b_ = std::move(b);
    p.cs_ = std::move(c);
    p.sign_ = sign >= 0 ? +1 : -1;
    p.grad_ = std::move(grad);
    p.time_dependent_ = time_dependent;
    return p;
}

SpeedProfile SpeedProfile::custom(CustomFn v, bool time_dependent) {
    SpeedProfile p;
    p.kind_ = kern::ProfileKind::custom;
    p.custom_ = std::move(v);
    p.time_dependent_ = time_dependent;
    return p;
}

SpeedProfile SpeedProfile::custom(CustomFn v, CustomDerivatives derivs, bool time_dependent) {
    SpeedProfile p = custom(std::move(v), time_dependent);
    p.custom_derivs_ = std::move(derivs);
    return p;
}

void SpeedProfile::fill_coeffs(double t, Vec2 x, kern::Coeffs& out) const {
    switch (kind_) {
    case kern::ProfileKind::isotropic:
        out.iso_c = c_(t, x);
        break;
    case kern::ProfileKind::elliptical: {
        out.ell_a = a_(t, x);
        out.ell_eps = eps_(t, x);
        const double phi = phi_(t, x);
        out.ell_cphi = std::cos(phi);
        out.ell_sphi = std::sin(phi);
        break;
    }
    case kern::ProfileKind::matsumoto: {
        out.mat_b = b_(t, x);
        out.mat_c = sign_ * cs_(t, x);
        if (grad_) {
            const Vec2 g = grad_(x);
            out.zx1 = g.x;
            out.zx2 = g.y;
        }
        break;
    }
    default:
        throw std::invalid_argument("fill_coeffs: custom profiles have no coefficient form");
    }
}

double SpeedProfile::value(double t, Vec2 x, Vec2 v) const {
    double V = 0.0;
    switch (kind_) {
    case kern::ProfileKind::isotropic:
        V = c_(t, x);
        break;
    case kern::ProfileKind::elliptical: {
        const double a = a_(t, x);
        const double eps = eps_(t, x);
        const double phi = phi_(t, x);
        const double u = norm(v);
        if (u == 0.0) throw std::invalid_argument("SpeedProfile::value: zero direction");
        const double ct = (v.x * std::cos(phi) + v.y * std::sin(phi)) / u;
        V = a * (1.0 - eps * eps) / (1.0 - eps * ct);
        break;
    }
    case kern::ProfileKind::matsumoto: {
        const Vec2 gz = grad_(x);
        const SymMat2 h{1.0 + gz.x * gz.x, gz.x * gz.y, 1.0 + gz.y * gz.y};
        const double hn = std::sqrt(h.quad(v, v));
        if (hn == 0.0) throw std::invalid_argument("SpeedProfile::value: zero direction");
        V = b_(t, x) + sign_ * cs_(t, x) * dot(v, gz) / hn;
        break;
    }
    default:
        V = custom_(t, x, v);
        break;
    }
    if (!(V > 0.0) || !std::isfinite(V))
        throw numerical_error(std::string("speed profile (") + describe(kind_) +
                              ") non-positive or non-finite at " + point_str(t, x, v));
    return V;
}

// ---------------------------------------------------------------------------
// FinslerMetric

FinslerMetric::FinslerMetric(RiemannianMetricField base, SpeedProfile profile, FdConfig fd)
    : base_(std::move(base)), profile_(std::move(profile)), fd_(fd) {
    if (!(fd_.v_step_rel > 0.0) || !(fd_.coord_step_rel > 0.0) || !(fd_.cond_limit > 0.0))
        throw validation_error("FdConfig: steps and condition limit must be positive");
}

bool FinslerMetric::kernelizable() const {
    if (fd_.force_numeric_tensor) return false;
    switch (profile_.kind()) {
    case kern::ProfileKind::isotropic: return true;
    case kern::ProfileKind::elliptical: return base_.kind() == kern::BaseKind::euclidean;
    case kern::ProfileKind::matsumoto: return base_.kind() == kern::BaseKind::graph_surface;
    default: return false;
    }
}

bool FinslerMetric::analytic_tensor() const {
    if (fd_.force_numeric_tensor) return false;
    if (kernelizable()) return true;
    return profile_.kind() == kern::ProfileKind::custom && profile_.has_custom_derivatives();
}

void FinslerMetric::coeffs_at(double t, Vec2 x, kern::Coeffs& out) const {
    profile_.fill_coeffs(t, x, out);
    if (base_.kind() == kern::BaseKind::graph_surface) {
        const Vec2 g = base_.height_grad(x);
        out.zx1 = g.x;
        out.zx2 = g.y;
    }
}

std::optional<kern::KernelMedium> FinslerMetric::kernel_medium() const {
    if (!kernelizable()) return std::nullopt;
    kern::KernelMedium m;
    m.profile = profile_.kind();
    m.base = base_.kind();
    m.time_dependent = profile_.time_dependent();
    FinslerMetric self = *this; // value copy keeps the closure self-contained
    m.coeffs = [self](double t, double x1, double x2, kern::Coeffs& out) {
        self.coeffs_at(t, {x1, x2}, out);
    };
    return m;
}

double FinslerMetric::speed(double t, Vec2 x, Vec2 v) const {
    if (profile_.kind() == kern::ProfileKind::matsumoto &&
        base_.kind() == kern::BaseKind::graph_surface) {
        // Base gradient is authoritative for the slope term.
        kern::Coeffs c;
        coeffs_at(t, x, c);
        const SymMat2 h{1.0 + c.zx1 * c.zx1, c.zx1 * c.zx2, 1.0 + c.zx2 * c.zx2};
        const double hn = std::sqrt(h.quad(v, v));
        if (hn == 0.0) throw std::invalid_argument("FinslerMetric::speed: zero direction");
        const double V = c.mat_b + c.mat_c * (v.x * c.zx1 + v.y * c.zx2) / hn;
        if (!(V > 0.0) || !std::isfinite(V))
            throw numerical_error("speed profile (matsumoto) non-positive or non-finite at " +
                                  point_str(t, x, v));
        return V;
    }
    return profile_.value(t, x, v);
}

double FinslerMetric::eval(double t, Vec2 x, Vec2 v) const {
    if (v.x == 0.0 && v.y == 0.0) return 0.0; // F(t,x,0) := 0
    if (profile_.kind() != kern::ProfileKind::custom) {
        kern::Coeffs c;
        coeffs_at(t, x, c);
        const auto cp = kern::pack_coeffs<double>(&c);
        bool err = false;
        const double f = kern::finsler_f_p<double>(profile_.kind(), base_.kind(), cp, v.x, v.y, err);
        if (err || !std::isfinite(f))
            throw numerical_error(std::string("F evaluation failed (") +
                                  describe(profile_.kind()) + ") at " + point_str(t, x, v));
        return f;
    }
    const double hn = std::sqrt(base_.inner(x, v, v));
    return hn / speed(t, x, v);
}

Vec2 FinslerMetric::indicatrix_point(double t, Vec2 x, Vec2 dir) const {
    if (dir.x == 0.0 && dir.y == 0.0)
        throw std::invalid_argument("indicatrix_point: zero direction");
    return dir / eval(t, x, dir);
}

SymMat2 FinslerMetric::custom_analytic_tensor(double t, Vec2 x, Vec2 v) const {
    // F^2 = A / V^2 with A = h(v,v):
    // g_ij = H_ij/V^2 - (A_i V_j + A_j V_i)/V^3 - A V_ij/V^3 + 3 A V_i V_j / V^4
    const SymMat2 H = base_.eval(x);
    const Vec2 Hv = H.mul(v);
    const double A = dot(v, Hv);
    const double V = speed(t, x, v);
    const Vec2 dV = profile_.custom_derivatives().dV_dv(t, x, v);
    const SymMat2 ddV = profile_.custom_derivatives().d2V_dv2(t, x, v);
    const double iV2 = 1.0 / (V * V);
    const double iV3 = iV2 / V;
    const double iV4 = iV2 * iV2;
    const Vec2 dA = 2.0 * Hv;
    SymMat2 g;
    g.a11 = H.a11 * iV2 - (dA.x * dV.x + dA.x * dV.x) * iV3 - A * ddV.a11 * iV3 +
            3.0 * A * dV.x * dV.x * iV4;
    g.a12 = H.a12 * iV2 - (dA.x * dV.y + dA.y * dV.x) * iV3 - A * ddV.a12 * iV3 +
            3.0 * A * dV.x * dV.y * iV4;
    g.a22 = H.a22 * iV2 - (dA.y * dV.y + dA.y * dV.y) * iV3 - A * ddV.a22 * iV3 +
            3.0 * A * dV.y * dV.y * iV4;
    return g;
}

SymMat2 FinslerMetric::numeric_tensor(double t, Vec2 x, Vec2 v) const {
    const double delta = fd_.v_step_rel * (norm(v) > 1.0 ? norm(v) : 1.0);
    auto f2 = [&](double dvx, double dvy) {
        const double f = eval(t, x, {v.x + dvx, v.y + dvy});
        return f * f;
    };
    const double f0 = f2(0.0, 0.0);
    SymMat2 g;
    g.a11 = 0.5 * (f2(delta, 0.0) - 2.0 * f0 + f2(-delta, 0.0)) / (delta * delta);
    g.a22 = 0.5 * (f2(0.0, delta) - 2.0 * f0 + f2(0.0, -delta)) / (delta * delta);
    g.a12 = (f2(delta, delta) - f2(delta, -delta) - f2(-delta, delta) + f2(-delta, -delta)) /
            (8.0 * delta * delta);
    if (!std::isfinite(g.a11) || !std::isfinite(g.a12) || !std::isfinite(g.a22)) {
        std::ostringstream os;
        os << "non-finite second difference of F^2 at " << point_str(t, x, v)
           << " (entries " << g.a11 << ", " << g.a12 << ", " << g.a22 << ")";
        throw numerical_error(os.str());
    }
    return g;
}

SymMat2 FinslerMetric::fundamental_tensor(double t, Vec2 x, Vec2 v) const {
    if (v.x == 0.0 && v.y == 0.0)
        throw std::invalid_argument("fundamental_tensor: undefined at v = 0");
    if (!fd_.force_numeric_tensor && kernelizable()) {
        kern::Coeffs c;
        coeffs_at(t, x, c);
        const auto cp = kern::pack_coeffs<double>(&c);
        bool err = false;
        const auto g = kern::tensor_p<double>(profile_.kind(), base_.kind(), cp, v.x, v.y, err);
        if (err || !std::isfinite(g.a11) || !std::isfinite(g.a12) || !std::isfinite(g.a22))
            throw numerical_error(std::string("fundamental tensor failed (") +
                                  describe(profile_.kind()) + ") at " + point_str(t, x, v));
        return {g.a11, g.a12, g.a22};
    }
    if (!fd_.force_numeric_tensor && profile_.kind() == kern::ProfileKind::custom &&
        profile_.has_custom_derivatives())
        return custom_analytic_tensor(t, x, v);
    return numeric_tensor(t, x, v);
}

ConvexityReport FinslerMetric::convexity_check(double t, Vec2 x, int n_samples) const {
    ConvexityReport rep;
    rep.n_samples = n_samples < 8 ? 8 : n_samples;
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    rep.positive_definite = true;
    for (int k = 0; k < rep.n_samples; ++k) {
        const double psi = 2.0 * M_PI * k / rep.n_samples;
        const Vec2 dir{std::cos(psi), std::sin(psi)};
        double lo;
        try {
            lo = fundamental_tensor(t, x, dir).eigenvalues()[0];
        } catch (const std::exception& e) {
            rep.positive_definite = false;
            rep.failure = e.what();
            rep.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
            rep.worst_direction = dir;
            return rep;
        }
        if (lo < rep.min_eigenvalue) {
            rep.min_eigenvalue = lo;
            rep.worst_direction = dir;
        }
    }
    rep.positive_definite = rep.min_eigenvalue > 0.0;
    return rep;
}

} // namespace finfront
