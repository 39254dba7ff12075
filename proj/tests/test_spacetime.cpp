#include <cmath>
#include <random>

#include "doctest.h"
#include "finfront/spacetime.hpp"

using namespace finfront;

namespace {

FinslerMetric unit_speed() {
    return FinslerMetric(RiemannianMetricField::euclidean(), SpeedProfile::isotropic(1.0));
}

} // namespace

TEST_CASE("G evaluation and homogeneity") {
    const auto F = unit_speed();
    CHECK(G_eval(F, {0, {0, 0}}, {5.0, {3, 4}}) == doctest::Approx(0.0));
    CHECK(G_eval(F, {0, {0, 0}}, {2.0, {3, 4}}) == doctest::Approx(-21.0));
    // G((lambda, 0)) = lambda^2
    CHECK(G_eval(F, {0, {0, 0}}, {3.0, {0, 0}}) == doctest::Approx(9.0));

    const FinslerMetric E(RiemannianMetricField::euclidean(), SpeedProfile::elliptical(1.2, 0.5, 0.7));
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0), lam(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const SpacetimeVector vh{u(rng), {u(rng) + 2.5, u(rng)}};
        const double l = lam(rng);
        const double g1 = G_eval(E, {0.2, {0.1, 0.3}}, vh);
        const double gl = G_eval(E, {0.2, {0.1, 0.3}}, {l * vh.v0, l * vh.v});
        const double f = E.eval(0.2, {0.1, 0.3}, vh.v);
        const double scale = (vh.v0 * vh.v0 + f * f) * l * l;
        CHECK(std::fabs(gl - l * l * g1) <= 1e-12 * scale);
    }
}

TEST_CASE("lightlike lift") {
    const auto F = unit_speed();
    CHECK(lightlike_lift(F, 0, {0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(lightlike_lift(F, 0, {0, 0}, {0, 0}), std::invalid_argument);

    const FinslerMetric E(RiemannianMetricField::euclidean(), SpeedProfile::elliptical(1.0, 0.4, 0.3));
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Vec2 v{u(rng) + 1.5, u(rng)};
        // indicatrix points lift with v0 = 1
        const Vec2 w = E.indicatrix_point(0, {0, 0}, v);
        CHECK(lightlike_lift(E, 0, {0, 0}, w) == doctest::Approx(1.0).epsilon(1e-12));
        const double v0 = lightlike_lift(E, 0, {0, 0}, v);
        CHECK(std::fabs(G_eval(E, {0, {0, 0}}, {v0, v})) <= 1e-12 * v0 * v0);
    }
}

TEST_CASE("spacetime fundamental tensor") {
    const FinslerMetric F(RiemannianMetricField::euclidean(), SpeedProfile::isotropic(2.0));
    const Mat3 m = g_hat(F, {0, {0, 0}}, {1.0, {1, 1}});
    CHECK(m.m[0][0] == doctest::Approx(1.0));
    CHECK(m.m[1][1] == doctest::Approx(-0.25));
    CHECK(m.m[2][2] == doctest::Approx(-0.25));
    CHECK(m.m[1][2] == doctest::Approx(0.0));

    const FinslerMetric E(RiemannianMetricField::euclidean(), SpeedProfile::elliptical(1.1, 0.6, 0.2));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const SpacetimeVector vh{u(rng), {u(rng) + 2.5, u(rng)}};
        const Mat3 gh = g_hat(E, {0.1, {0.2, -0.1}}, vh);
        const double q = gh.quad({vh.v0, vh.v.x, vh.v.y}, {vh.v0, vh.v.x, vh.v.y});
        const double G = G_eval(E, {0.1, {0.2, -0.1}}, vh);
        const double f = E.eval(0.1, {0.2, -0.1}, vh.v);
        CHECK(std::fabs(q - G) <= 1e-8 * (vh.v0 * vh.v0 + f * f));
        // signature (+,-,-): spatial block negative definite
        const SymMat2 spatial{-gh.m[1][1], -gh.m[1][2], -gh.m[2][2]};
        CHECK(spatial.eigenvalues()[0] > 0.0);
    }
}

TEST_CASE("christoffel symbols") {
    SUBCASE("constant-coefficient medium has vanishing symbols") {
        const FinslerMetric E(RiemannianMetricField::euclidean(),
                              SpeedProfile::elliptical(1.0, 0.5, 0.4));
        const auto ch = christoffel_spacetime(E, {0.3, {0.7, -0.2}}, {1.0, {1.0, 0.4}});
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) CHECK(std::fabs(ch.s[k][i][j]) <= 1e-7);
    }

    SUBCASE("lower-index symmetry is exact") {
        const FinslerMetric F(
            RiemannianMetricField::euclidean(),
            SpeedProfile::isotropic([](double t, Vec2 x) { return 1.0 + 0.1 * t + 0.2 * x.x; }));
        const auto ch = christoffel_spacetime(F, {0.2, {0.4, 0.1}}, {1.0, {0.8, 0.3}});
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) CHECK(ch.s[k][i][j] == ch.s[k][j][i]);
    }

    SUBCASE("conformal closed form for isotropic V = c(x)") {
        auto c = [](Vec2 x) { return 1.0 + 0.3 * std::sin(x.x) * std::cos(x.y); };
        const FinslerMetric F(
            RiemannianMetricField::euclidean(),
            SpeedProfile::isotropic([c](double, Vec2 x) { return c(x); }, false));
        const Vec2 x{0.4, -0.3};
        const Vec2 v{1.3, 0.5};
        const auto ch = christoffel_spacetime(F, {0.0, x}, {F.eval(0, x, v), v});

        // g = delta / c(x)^2 is conformal: gamma^k_ij = d_i lam d^k_j + ... with
        // lam = -log c, so lam_i = -c_i / c.
        const double cv = c(x);
        const double c1 = 0.3 * std::cos(x.x) * std::cos(x.y);
        const double c2 = -0.3 * std::sin(x.x) * std::sin(x.y);
        const double lam[2] = {-c1 / cv, -c2 / cv};
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const double expect = (k == i ? lam[j] : 0.0) + (k == j ? lam[i] : 0.0) -
                                          (i == j ? lam[k] : 0.0);
                    CHECK(std::fabs(ch.s[k + 1][i + 1][j + 1] - expect) <= 1e-7);
                }
        // time-independent profile: all 0-index symbols vanish
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(std::fabs(ch.s[0][i][j]) <= 1e-12);
                CHECK(std::fabs(ch.s[i][0][j]) <= 1e-12);
            }
    }
}

TEST_CASE("pregeodesic right-hand side") {
    SUBCASE("constant-coefficient medium: zero acceleration") {
        const FinslerMetric E(RiemannianMetricField::euclidean(),
                              SpeedProfile::elliptical(1.0, 0.5, 0.0));
        const Vec2 a = pregeodesic_rhs(E, 0.2, {0.3, 0.4}, {1.2, -0.3});
        CHECK(std::fabs(a.x) <= 1e-12);
        CHECK(std::fabs(a.y) <= 1e-12);
    }

    SUBCASE("time-independent medium: reduces to -gamma contraction") {
        const FinslerMetric F(
            RiemannianMetricField::euclidean(),
            SpeedProfile::isotropic([](double, Vec2 x) { return 1.0 + 0.2 * std::cos(x.x + x.y); },
                                    false));
        const Vec2 x{0.5, -0.2};
        const Vec2 v{0.9, 0.4};
        const Vec2 a = pregeodesic_rhs(F, 0.0, x, v);
        const auto ch = christoffel_spacetime(F, {0.0, x}, {F.eval(0, x, v), v});
        const double vv[2] = {v.x, v.y};
        for (int k = 0; k < 2; ++k) {
            double s = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) s += ch.s[k + 1][i + 1][j + 1] * vv[i] * vv[j];
            CHECK(std::fabs((k == 0 ? a.x : a.y) + s) <= 1e-9);
        }
    }

    SUBCASE("rheonomic radial benchmark, pointwise") {
        // V = 1 + t: radial waves satisfy sigma(t) = (r0 + t + t^2/2) e_r, so the
        // acceleration along the ray equals dc/dt = 1.
        const FinslerMetric F(
            RiemannianMetricField::euclidean(),
            SpeedProfile::isotropic([](double t, Vec2) { return 1.0 + t; }, true));
        const double t = 0.3;
        const Vec2 dir{1.0, 0.0};
        const Vec2 a = pregeodesic_rhs(F, t, {2.0, 0.0}, (1.0 + t) * dir);
        CHECK(a.x == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(std::fabs(a.y) <= 1e-9);
    }

    SUBCASE("vanishing spatial velocity is rejected") {
        const auto F = unit_speed();
        CHECK_THROWS_AS(pregeodesic_rhs(F, 0, {0, 0}, {0, 0}), numerical_error);
    }
}

TEST_CASE("affine geodesic right-hand side") {
    SUBCASE("constant medium: straight lines") {
        const FinslerMetric E(RiemannianMetricField::euclidean(),
                              SpeedProfile::elliptical(1.0, 0.3, 0.9));
        const auto acc = geodesic_rhs_affine(E, {0.1, {0.2, 0.5}}, {1.0, {0.7, -0.1}});
        CHECK(std::fabs(acc.v0) <= 1e-9);
        CHECK(std::fabs(acc.v.x) <= 1e-9);
        CHECK(std::fabs(acc.v.y) <= 1e-9);
    }
}
