#pragma once
#include <functional>
#include <optional>
#include <string>

#include "finfront/errors.hpp"
#include "finfront/kernels/medium.hpp"
#include "finfront/vec.hpp"

namespace finfront {

// Finite-difference and conditioning policy for tensor evaluation.
struct FdConfig {
    double v_step_rel = 1e-4;     // direction Hessian step, scaled by max(|v|, 1)
    double coord_step_rel = 1e-5; // coordinate partial step, scaled by max(|coord|, 1)
    double cond_limit = 1e12;     // reject tensors above this condition number
    bool force_numeric_tensor = false; // ignore closed forms, difference F^2 instead
};

// Base Riemannian metric h on the plane: euclidean, or the metric induced on
// the graph of a height function z(x1,x2),
//   h = [[1 + z1^2, z1 z2], [z1 z2, 1 + z2^2]],  zi = dz/dxi.
class RiemannianMetricField {
public:
    using HeightFn = std::function<double(Vec2)>;
    using GradFn = std::function<Vec2(Vec2)>;

    static RiemannianMetricField euclidean();
    static RiemannianMetricField graph_surface(HeightFn z, GradFn grad);
    static RiemannianMetricField graph_surface(HeightFn z); // central-difference gradient

    kern::BaseKind kind() const { return kind_; }
    SymMat2 eval(Vec2 x) const;
    // v^T h(x) u
    double inner(Vec2 x, Vec2 v, Vec2 u) const;
    double height(Vec2 x) const;
    Vec2 height_grad(Vec2 x) const;

private:
    RiemannianMetricField() = default;
    kern::BaseKind kind_ = kern::BaseKind::euclidean;
    HeightFn height_;
    GradFn grad_;
};

// Direction-dependent wave speed V(t,x,v), positive and 0-homogeneous in v.
class SpeedProfile {
public:
    using CoeffFn = std::function<double(double t, Vec2 x)>;
    using CustomFn = std::function<double(double t, Vec2 x, Vec2 v)>;
    using GradFn = std::function<Vec2(Vec2)>;

    // Analytic direction derivatives a custom profile may register; when
    // present the fundamental tensor is assembled from them instead of
    // finite differences.
    struct CustomDerivatives {
        std::function<Vec2(double, Vec2, Vec2)> dV_dv;
        std::function<SymMat2(double, Vec2, Vec2)> d2V_dv2;
    };

    static SpeedProfile isotropic(double c);
    static SpeedProfile isotropic(CoeffFn c, bool time_dependent = true);
    // V = a(1-eps^2) / (1 - eps cos(theta - phi)); indicatrix is an ellipse of
    // eccentricity eps, semi-major axis a, focus at the origin, oriented along phi.
    static SpeedProfile elliptical(double a, double eps, double phi);
    static SpeedProfile elliptical(CoeffFn a, CoeffFn eps, CoeffFn phi,
                                   bool time_dependent = true);
    // V = b + sign * c * <v, grad z> / |v|_h, slope-dependent speed on a graph.
    static SpeedProfile matsumoto(double b, double c, int sign, GradFn grad);
    static SpeedProfile matsumoto(CoeffFn b, CoeffFn c, int sign, GradFn grad,
                                  bool time_dependent = true);
    static SpeedProfile custom(CustomFn v, bool time_dependent = true);
    static SpeedProfile custom(CustomFn v, CustomDerivatives derivs,
                               bool time_dependent = true);

    kern::ProfileKind kind() const { return kind_; }
    bool time_dependent() const { return time_dependent_; }
    // V(t,x,v); throws numerical_error if the profile evaluates non-positive.
    double value(double t, Vec2 x, Vec2 v) const;
    // Built-in families only: coefficient values at (t,x).
    void fill_coeffs(double t, Vec2 x, kern::Coeffs& out) const;
    const CustomFn& custom_value() const { return custom_; }
    bool has_custom_derivatives() const { return static_cast<bool>(custom_derivs_.dV_dv); }
    const CustomDerivatives& custom_derivatives() const { return custom_derivs_; }
    int slope_sign() const { return sign_; }

private:
    SpeedProfile() = default;
    kern::ProfileKind kind_ = kern::ProfileKind::isotropic;
    bool time_dependent_ = true;
    CoeffFn c_, a_, eps_, phi_, b_, cs_;
    int sign_ = +1;
    GradFn grad_;
    CustomFn custom_;
    CustomDerivatives custom_derivs_;
};

struct ConvexityReport {
    bool positive_definite = false;
    double min_eigenvalue = 0.0;
    Vec2 worst_direction{1.0, 0.0};
    int n_samples = 0;
    std::string failure; // nonempty if a sample could not be evaluated
};

// Time-dependent Finsler metric F(t,x,v) = |v|_h / V(t,x,v), with F(t,x,0) = 0.
class FinslerMetric {
public:
    FinslerMetric(RiemannianMetricField base, SpeedProfile profile, FdConfig fd = {});

    const RiemannianMetricField& base() const { return base_; }
    const SpeedProfile& profile() const { return profile_; }
    const FdConfig& fd() const { return fd_; }
    bool time_dependent() const { return profile_.time_dependent(); }

    // F(t,x,v). With a graph-surface base the base metric's height gradient is
    // authoritative for both |v|_h and a matsumoto profile's slope term.
    double eval(double t, Vec2 x, Vec2 v) const;
    // V(t,x,v) as used by eval.
    double speed(double t, Vec2 x, Vec2 v) const;
    // Fundamental tensor g_v = 1/2 Hess_v(F^2): closed form for built-in
    // families, registered derivatives for custom profiles that carry them,
    // otherwise central second differences of F^2. Requires v != 0.
    SymMat2 fundamental_tensor(double t, Vec2 x, Vec2 v) const;
    // dir / F(t,x,dir): the F-unit vector along dir.
    Vec2 indicatrix_point(double t, Vec2 x, Vec2 dir) const;
    // Sampled positive-definiteness of g over unit-circle directions.
    ConvexityReport convexity_check(double t, Vec2 x, int n_samples = 64) const;

    bool analytic_tensor() const;
    // Kernel form for the batched integrator; nullopt for custom profiles,
    // forced-numeric tensors, or non-canonical profile/base pairings.
    std::optional<kern::KernelMedium> kernel_medium() const;
    // Coefficient values at (t,x) shared by eval/tensor and kernel_medium.
    void coeffs_at(double t, Vec2 x, kern::Coeffs& out) const;

private:
    SymMat2 numeric_tensor(double t, Vec2 x, Vec2 v) const;
    SymMat2 custom_analytic_tensor(double t, Vec2 x, Vec2 v) const;
    bool kernelizable() const;

    RiemannianMetricField base_;
    SpeedProfile profile_;
    FdConfig fd_;
};

} // namespace finfront
