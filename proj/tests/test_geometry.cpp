#include <cmath>
#include <random>

#include "doctest.h"
#include "finfront/geometry.hpp"

using namespace finfront;

namespace {

FinslerMetric iso_metric(double c) {
    return FinslerMetric(RiemannianMetricField::euclidean(), SpeedProfile::isotropic(c));
}

Vec2 random_dir(std::mt19937& rng) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> len(0.3, 3.0);
    const double a = ang(rng);
    const double r = len(rng);
    return {r * std::cos(a), r * std::sin(a)};
}

} // namespace

TEST_CASE("base metric inner products") {
    const auto eu = RiemannianMetricField::euclidean();
    CHECK(eu.inner({0, 0}, {3, 4}, {3, 4}) == doctest::Approx(25.0));

    const auto flat = RiemannianMetricField::graph_surface(
        [](Vec2) { return 7.0; }, [](Vec2) { return Vec2{0.0, 0.0}; });
    CHECK(flat.inner({1, 2}, {1, 0}, {0, 1}) == doctest::Approx(0.0));
    CHECK(flat.eval({1, 2}).a11 == doctest::Approx(1.0));

    // z = x1: h_11 = 1 + (dz/dx1)^2 = 2
    const auto ramp = RiemannianMetricField::graph_surface(
        [](Vec2 x) { return x.x; }, [](Vec2) { return Vec2{1.0, 0.0}; });
    CHECK(ramp.inner({0, 0}, {1, 0}, {1, 0}) == doctest::Approx(2.0));

    // finite-difference gradient fallback agrees with the analytic one
    const auto fd = RiemannianMetricField::graph_surface(
        [](Vec2 x) { return std::sin(x.x) * x.y; });
    const Vec2 g = fd.height_grad({0.3, 1.2});
    CHECK(g.x == doctest::Approx(std::cos(0.3) * 1.2).epsilon(1e-8));
    CHECK(g.y == doctest::Approx(std::sin(0.3)).epsilon(1e-8));
}

TEST_CASE("finsler evaluation") {
    const auto F = iso_metric(2.0);
    CHECK(F.eval(0.0, {0, 0}, {3, 4}) == doctest::Approx(2.5));
    CHECK(F.eval(0.0, {0, 0}, {0, 0}) == 0.0);

    // eps = 0 collapses the elliptical profile to V = a
    const FinslerMetric E0(RiemannianMetricField::euclidean(),
                           SpeedProfile::elliptical(1.0, 0.0, 0.7));
    CHECK(E0.eval(0.0, {0, 0}, {1, 0}) == doctest::Approx(1.0));

    // 1-homogeneity
    std::mt19937 rng(42);
    const FinslerMetric E(RiemannianMetricField::euclidean(),
                          SpeedProfile::elliptical(1.3, 0.5, 0.4));
    for (int i = 0; i < 50; ++i) {
        const Vec2 v = random_dir(rng);
        const double f1 = E.eval(0.0, {0.1, -0.2}, v);
        const double f2 = E.eval(0.0, {0.1, -0.2}, 2.0 * v);
        CHECK(std::fabs(f2 - 2.0 * f1) <= 1e-12 * f2);
    }
}

TEST_CASE("speed profiles are 0-homogeneous") {
    std::mt19937 rng(7);
    const auto grad = [](Vec2 x) -> Vec2 {
        return {0.4 * std::cos(x.x), -0.3 * std::sin(x.y)};
    };
    const SpeedProfile profiles[] = {
        SpeedProfile::isotropic([](double t, Vec2 x) { return 1.0 + 0.1 * t + 0.05 * x.x; }),
        SpeedProfile::elliptical([](double, Vec2) { return 1.2; },
                                 [](double t, Vec2) { return 0.4 + 0.1 * std::sin(t); },
                                 [](double, Vec2 x) { return 0.3 * x.y; }),
        SpeedProfile::matsumoto([](double, Vec2) { return 1.0; },
                                [](double, Vec2) { return 0.3; }, +1, grad),
    };
    const double lambdas[] = {1e-3, 0.5, 2.0, 1e3};
    for (const auto& p : profiles) {
        for (int i = 0; i < 30; ++i) {
            const Vec2 v = random_dir(rng);
            const Vec2 x{0.3, -0.7};
            const double v0 = p.value(0.4, x, v);
            for (double lam : lambdas) {
                const double vl = p.value(0.4, x, lam * v);
                CHECK(std::fabs(vl - v0) <= 1e-12 * v0);
            }
        }
    }
}

TEST_CASE("fundamental tensor: isotropic reduces to h/c^2") {
    const auto F = iso_metric(2.0);
    std::mt19937 rng(3);
    SymMat2 first{};
    for (int i = 0; i < 10; ++i) {
        const Vec2 v = random_dir(rng);
        const SymMat2 g = F.fundamental_tensor(0.0, {0, 0}, v);
        CHECK(g.a11 == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(g.a22 == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(g.a12 == doctest::Approx(0.0).epsilon(1e-12));
        if (i == 0) first = g;
        CHECK(std::fabs(g.a11 - first.a11) <= 1e-8);
    }

    // the same holds when forced through the finite-difference path
    FdConfig fd;
    fd.force_numeric_tensor = true;
    const FinslerMetric Fn(RiemannianMetricField::euclidean(), SpeedProfile::isotropic(2.0), fd);
    for (int i = 0; i < 10; ++i) {
        const SymMat2 g = Fn.fundamental_tensor(0.0, {0, 0}, random_dir(rng));
        CHECK(g.a11 == doctest::Approx(0.25).epsilon(1e-7));
        CHECK(g.a12 == doctest::Approx(0.0).epsilon(1e-7));
    }
}

TEST_CASE("fundamental tensor: finite differences vs analytic forms") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ua(0.5, 2.0), ue(0.0, 0.9), up(0.0, 2.0 * M_PI);

    SUBCASE("elliptical") {
        for (int trial = 0; trial < 50; ++trial) {
            const double a = ua(rng), eps = ue(rng), phi = up(rng);
            const FinslerMetric A(RiemannianMetricField::euclidean(),
                                  SpeedProfile::elliptical(a, eps, phi));
            FdConfig fd;
            fd.force_numeric_tensor = true;
            const FinslerMetric N(RiemannianMetricField::euclidean(),
                                  SpeedProfile::elliptical(a, eps, phi), fd);
            const Vec2 v = random_dir(rng);
            const SymMat2 ga = A.fundamental_tensor(0, {0, 0}, v);
            const SymMat2 gn = N.fundamental_tensor(0, {0, 0}, v);
            CHECK(std::fabs(ga.a11 - gn.a11) <= 1e-6);
            CHECK(std::fabs(ga.a12 - gn.a12) <= 1e-6);
            CHECK(std::fabs(ga.a22 - gn.a22) <= 1e-6);
        }
    }

    SUBCASE("matsumoto") {
        const auto z = [](Vec2 x) { return 0.5 * std::exp(-(x.x * x.x + x.y * x.y)); };
        const auto gz = [](Vec2 x) -> Vec2 {
            const double e = 0.5 * std::exp(-(x.x * x.x + x.y * x.y));
            return {-2.0 * x.x * e, -2.0 * x.y * e};
        };
        const auto base = RiemannianMetricField::graph_surface(z, gz);
        const FinslerMetric A(base, SpeedProfile::matsumoto(1.0, 0.4, +1, gz));
        FdConfig fd;
        fd.force_numeric_tensor = true;
        const FinslerMetric N(base, SpeedProfile::matsumoto(1.0, 0.4, +1, gz), fd);
        for (int trial = 0; trial < 50; ++trial) {
            const Vec2 x{0.3, -0.5};
            const Vec2 v = random_dir(rng);
            const SymMat2 ga = A.fundamental_tensor(0, x, v);
            const SymMat2 gn = N.fundamental_tensor(0, x, v);
            CHECK(std::fabs(ga.a11 - gn.a11) <= 1e-6);
            CHECK(std::fabs(ga.a12 - gn.a12) <= 1e-6);
            CHECK(std::fabs(ga.a22 - gn.a22) <= 1e-6);
        }
    }
}

TEST_CASE("g(v)(v,v) = F(v)^2") {
    std::mt19937 rng(19);
    const auto gz = [](Vec2 x) -> Vec2 { return {0.3 * std::cos(x.x), 0.2 * x.y}; };
    const auto zfn = [](Vec2 x) { return 0.3 * std::sin(x.x) + 0.1 * x.y * x.y; };
    const FinslerMetric metrics[] = {
        iso_metric(1.7),
        FinslerMetric(RiemannianMetricField::euclidean(), SpeedProfile::elliptical(1.0, 0.6, 0.9)),
        FinslerMetric(RiemannianMetricField::graph_surface(zfn, gz),
                      SpeedProfile::matsumoto(1.0, 0.3, +1, gz)),
    };
    for (const auto& F : metrics) {
        for (int i = 0; i < 100; ++i) {
            const Vec2 v = random_dir(rng);
            const Vec2 x{0.2, 0.4};
            const double f = F.eval(0.0, x, v);
            const double q = F.fundamental_tensor(0.0, x, v).quad(v, v);
            CHECK(std::fabs(q - f * f) <= 1e-8 * f * f);
        }
    }
}

TEST_CASE("indicatrix points") {
    const auto F = iso_metric(2.0);
    const Vec2 p = F.indicatrix_point(0, {0, 0}, {1, 0});
    CHECK(p.x == doctest::Approx(2.0));
    CHECK(p.y == doctest::Approx(0.0));

    std::mt19937 rng(5);
    const FinslerMetric E(RiemannianMetricField::euclidean(), SpeedProfile::elliptical(1.0, 0.5, 0.0));
    for (int i = 0; i < 25; ++i) {
        const Vec2 w = E.indicatrix_point(0, {0, 0}, random_dir(rng));
        CHECK(std::fabs(E.eval(0, {0, 0}, w) - 1.0) <= 1e-12);
    }
    // along theta = 0 the elliptical indicatrix radius is a(1-e^2)/(1-e) = 1.5
    const Vec2 tip = E.indicatrix_point(0, {0, 0}, {1, 0});
    CHECK(norm(tip) == doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(F.indicatrix_point(0, {0, 0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("convexity diagnostics") {
    const FinslerMetric E(RiemannianMetricField::euclidean(), SpeedProfile::elliptical(1.0, 0.5, 0.3));
    const auto re = E.convexity_check(0.0, {0, 0}, 64);
    CHECK(re.positive_definite);
    CHECK(re.min_eigenvalue > 0.0);

    const auto F = iso_metric(2.0);
    const auto ri = F.convexity_check(0.0, {0, 0}, 64);
    CHECK(ri.positive_definite);
    CHECK(ri.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-12));

    // four-petal speed profile: non-convex indicatrix, must report failure
    const auto flower = SpeedProfile::custom([](double, Vec2, Vec2 v) {
        const double th = std::atan2(v.y, v.x);
        return 1.0 + 0.35 * std::cos(4.0 * th);
    }, false);
    const FinslerMetric Fw(RiemannianMetricField::euclidean(), flower);
    const auto rw = Fw.convexity_check(0.0, {0, 0}, 64);
    CHECK_FALSE(rw.positive_definite);
    CHECK(rw.min_eigenvalue < 0.0);

    // elliptical profiles stay positive definite up to eps = 0.9
    for (double eps : {0.3, 0.6, 0.9}) {
        const FinslerMetric Fe(RiemannianMetricField::euclidean(),
                               SpeedProfile::elliptical(1.0, eps, 1.1));
        CHECK(Fe.convexity_check(0.0, {0, 0}, 64).positive_definite);
    }

    // matsumoto with mild slope is admissible
    const auto gz = [](Vec2 x) -> Vec2 { return {0.3 * std::exp(-x.x * x.x), 0.1}; };
    const FinslerMetric Fm(RiemannianMetricField::graph_surface([](Vec2) { return 0.0; }, gz),
                           SpeedProfile::matsumoto(1.0, 0.3, +1, gz));
    CHECK(Fm.convexity_check(0.0, {0.2, 0.0}, 64).positive_definite);
}

TEST_CASE("error paths") {
    const auto F = iso_metric(1.0);
    CHECK_THROWS_AS(F.fundamental_tensor(0, {0, 0}, {0, 0}), std::invalid_argument);

    const auto bad = SpeedProfile::custom([](double, Vec2, Vec2) { return -1.0; }, false);
    const FinslerMetric Fb(RiemannianMetricField::euclidean(), bad);
    CHECK_THROWS_AS(Fb.eval(0, {0, 0}, {1, 0}), numerical_error);

    const auto nan_grad = RiemannianMetricField::graph_surface(
        [](Vec2) { return 0.0; },
        [](Vec2) -> Vec2 { return {std::numeric_limits<double>::quiet_NaN(), 0.0}; });
    CHECK_THROWS_AS(nan_grad.eval({0, 0}), numerical_error);
}

TEST_CASE("custom profile with registered derivatives matches finite differences") {
    // anisotropic speed V = 1 + 0.2 v1^2/|v|^2 (0-homogeneous, smooth away from 0)
    auto V = [](double, Vec2, Vec2 v) { return 1.0 + 0.2 * v.x * v.x / norm2(v); };
    SpeedProfile::CustomDerivatives d;
    d.dV_dv = [](double, Vec2, Vec2 v) -> Vec2 {
        const double n2 = norm2(v);
        const double q = v.x * v.x / n2;
        // d/dv_i [0.2 v1^2 / n2]
        return {0.2 * (2.0 * v.x / n2 - 2.0 * q * v.x / n2), 0.2 * (-2.0 * q * v.y / n2)};
    };
    d.d2V_dv2 = [](double, Vec2, Vec2 v) -> SymMat2 {
        const double n2 = norm2(v);
        const double x = v.x, y = v.y;
        const double i2 = 1.0 / (n2 * n2);
        const double i3 = i2 / n2;
        // Hessian of v1^2/|v|^2, scaled by 0.2
        SymMat2 h;
        h.a11 = 2.0 / n2 - 10.0 * x * x * i2 + 8.0 * x * x * x * x * i3;
        h.a12 = -4.0 * x * y * i2 + 8.0 * x * x * x * y * i3;
        h.a22 = -2.0 * x * x * i2 + 8.0 * x * x * y * y * i3;
        return {0.2 * h.a11, 0.2 * h.a12, 0.2 * h.a22};
    };
    const FinslerMetric A(RiemannianMetricField::euclidean(), SpeedProfile::custom(V, d, false));
    FdConfig fd;
    fd.force_numeric_tensor = true;
    const FinslerMetric N(RiemannianMetricField::euclidean(), SpeedProfile::custom(V, false), fd);
    CHECK(A.analytic_tensor());
    CHECK_FALSE(N.analytic_tensor());
    std::mt19937 rng(23);
    for (int i = 0; i < 30; ++i) {
        const Vec2 v = random_dir(rng);
        const SymMat2 ga = A.fundamental_tensor(0, {0, 0}, v);
        const SymMat2 gn = N.fundamental_tensor(0, {0, 0}, v);
        CHECK(std::fabs(ga.a11 - gn.a11) <= 2e-6);
        CHECK(std::fabs(ga.a12 - gn.a12) <= 2e-6);
        CHECK(std::fabs(ga.a22 - gn.a22) <= 2e-6);
    }
}
