#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "axisym/scenario.hpp"

using namespace axisym;
using namespace axisym::scenario;

namespace {
GridPtr scenario_grid(int n = 81, double pr = 2.0, double pb = 2.0) {
    return make_grid({n, n, pr, pb, Symmetry::OddInZ});
}
} // namespace

TEST_CASE("parameter validation") {
    ScenarioParams p;
    CHECK_NOTHROW(p.validate());
    p.eps = 0.3; // eps >= delta
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = ScenarioParams{};
    p.big_n = 0.7;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = ScenarioParams{};
    CHECK(p.a0() == doctest::Approx(p.eps * p.eps));
}

TEST_CASE("initial data invariants") {
    ScenarioParams p;
    p.eps = 0.05;
    p.delta = 0.2;
    p.inner_exponent = 2;
    const auto w0 = ks_initial_data(p, scenario_grid());

    // odd in z: zero on the z = 0 node row
    for (int i = 0; i < w0.grid().n_rho(); ++i) CHECK(w0.value(i, 0) == 0.0);

    // range [0, 1] on D+
    for (double v : w0.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    // 1 outside the strip
    CHECK(ks_initial_value(p, {0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(ks_initial_value(p, {0.1, 0.3}) == doctest::Approx(1.0));

    // 1 on the wedge O(eps^2, eps)
    for (PointRZ q : {PointRZ{0.999, 0.0035}, PointRZ{0.99, 0.03}, PointRZ{0.96, 0.045}}) {
        CHECK(in_O(q, p.a0(), p.eps));
        CHECK(ks_initial_value(p, q) == doctest::Approx(1.0));
    }

    // odd extension through the analytic definition
    CHECK(ks_initial_value(p, {0.5, -0.4}) == doctest::Approx(-1.0));

    // gradient scale ~ eps^-k; probe along r = 0.9999 where the wedge ramp is
    // live (the diagonal constraint z > 1 - r holds through the ramp window)
    double measured = 0.0;
    const double a0 = p.a0();
    for (int k = 0; k < 400; ++k) {
        const double z = a0 * (0.25 + 1.25 * k / 400.0);
        const double h = a0 * 1e-3;
        const double d = (ks_initial_value(p, {0.9999, z + h}) -
                          ks_initial_value(p, {0.9999, z - h})) /
                         (2 * h);
        measured = std::max(measured, std::abs(d));
    }
    CHECK(measured * a0 > 0.1);
    CHECK(measured * a0 < 10.0);
}

TEST_CASE("grid too coarse for the strip") {
    ScenarioParams p;
    p.delta = 0.002; // far below the resolution of a 21-node grid
    p.eps = 0.001;
    CHECK_THROWS_AS(ks_initial_data(p, make_grid({21, 21, 1.0, 1.0, Symmetry::OddInZ})),
                    ConfigError);
}

TEST_CASE("region predicates") {
    ScenarioParams p; // N = 0.25, gamma = pi/6
    SUBCASE("e1 not in S_N (open conditions)") {
        CHECK_FALSE(in_S_N({1.0, 0.0}, p));
    }
    SUBCASE("Q(xbar) nonempty and contained in S_N") {
        const PointRZ xbar{1.0 - p.big_n / 2, p.big_n / 2};
        CHECK(in_S_N(xbar, p));
        int inside = 0;
        for (int k = 0; k < 500; ++k) {
            const PointRZ y{1.0 - p.big_n + 1e-4 + (p.big_n - 2e-4) * (k % 25) / 25.0,
                            1e-4 + (p.big_n - 2e-4) * (k / 25) / 20.0};
            if (in_Q(y, xbar, p)) {
                ++inside;
                CHECK(in_S_N(y, p));
            }
        }
        CHECK(inside > 0);
    }
    SUBCASE("diagonal boundary of O is excluded (strict)") {
        const PointRZ on_diag{0.9, 1.0 - 0.9};
        CHECK_FALSE(in_O(on_diag, 0.01, 0.5));
        const PointRZ above{0.9, 1.0 - 0.9 + 1e-6};
        CHECK(in_O(above, 0.01, 0.5));
    }
    SUBCASE("sector overlap width is pi/2 - 2 gamma for gamma < pi/4") {
        // points on rays phi = gamma +/- small near e1 lie in both sectors
        const double d = 0.05;
        auto at_phi = [&](double phi) {
            return PointRZ{1.0 - d * std::sin(phi), d * std::cos(phi)};
        };
        CHECK(in_D1(at_phi(p.gamma + 0.01), p));
        CHECK(in_D2(at_phi(p.gamma + 0.01), p));
        CHECK(in_D1(at_phi(M_PI / 2 - p.gamma - 0.01), p));
        CHECK(in_D2(at_phi(M_PI / 2 - p.gamma - 0.01), p));
        CHECK_FALSE(in_D2(at_phi(p.gamma - 0.01), p));
        CHECK_FALSE(in_D1(at_phi(M_PI / 2 - p.gamma + 0.01), p));
    }
    SUBCASE("tag dispatch") {
        CHECK(region_membership({0.9, 0.1}, Region::S_N, p));
        CHECK(region_membership({0.95, 0.1}, Region::OSet, p, {1, 0}, 0.05, 0.2));
    }
}

TEST_CASE("a(t), b(t) tracking") {
    ScenarioParams p;
    SUBCASE("zero velocity keeps (a, b) = (eps^k, eps)") {
        UzProfile prof;
        prof.t = 0.0;
        prof.z_levels = {1e-6, 1e-4, 1e-2, 0.5};
        prof.uz_max.assign(4, 0.0);
        prof.uz_min.assign(4, 0.0);
        UzProfile prof1 = prof;
        prof1.t = 1.0;
        const ABSeries ab = track_a_b({prof, prof1}, p);
        CHECK(ab.a.front() == doctest::Approx(p.a0()));
        CHECK(ab.b.front() == doctest::Approx(p.eps));
        CHECK(ab.a.back() == doctest::Approx(p.a0()));
        CHECK(ab.b.back() == doctest::Approx(p.eps));
        CHECK_FALSE(ab.breakdown);
    }
    SUBCASE("uniform negative u^z contracts both exponentially") {
        // du/dt = -z  =>  a(t) = a0 exp(-t)
        std::vector<UzProfile> profs;
        for (double t : {0.0, 0.5, 1.0}) {
            UzProfile prof;
            prof.t = t;
            for (double z = 1e-7; z <= 0.6; z *= 2.0) {
                prof.z_levels.push_back(z);
                prof.uz_max.push_back(-z);
                prof.uz_min.push_back(-z);
            }
            profs.push_back(prof);
        }
        const ABSeries ab = track_a_b(profs, p, 64);
        CHECK(ab.a.back() == doctest::Approx(p.a0() * std::exp(-1.0)).epsilon(0.02));
        CHECK(ab.b.back() == doctest::Approx(p.eps * std::exp(-1.0)).epsilon(0.02));
        CHECK_FALSE(ab.breakdown);
    }
}

TEST_CASE("w stays 1 on the shrunken wedge under transport") {
    // short scenario run at coarse scale: w(t) = 1 on O(a(t), b(t)) while the
    // scenario holds (interpolation tolerance)
    ScenarioParams p;
    p.eps = 0.15;
    p.delta = 0.3;
    p.inner_exponent = 2; // a(0) = 0.0225, resolvable at this grid
    auto grid = scenario_grid(65, 2.0, 2.0);
    SimState s{0.0, ks_initial_data(p, grid), {}};
    TimeStepSpec ts;
    ts.dt = 0.01;
    ts.cfl_limit = 8.0;
    std::vector<UzProfile> profs;
    auto vf0 = std::make_shared<VelocityField>(VelocityField::solve(s.w));
    profs.push_back(sample_uz_profile(*vf0, 0.0));
    for (int k = 0; k < 3; ++k) {
        s = advect_step(s, ts);
        profs.push_back(sample_uz_profile(*s.step_velocity, s.t));
    }
    const ABSeries ab = track_a_b(profs, p);
    CHECK_FALSE(ab.breakdown);
    const double a_t = ab.a.back(), b_t = ab.b.back();
    CHECK(a_t < b_t);
    int checked = 0;
    for (PointRZ q :
         {PointRZ{0.99, 0.02}, PointRZ{0.97, 0.05}, PointRZ{0.96, 0.06}, PointRZ{0.995, 0.015}}) {
        if (!in_O(q, 1.2 * a_t, 0.8 * b_t)) continue;
        ++checked;
        CHECK(s.w.interpolate(q) == doctest::Approx(1.0).epsilon(5e-3));
    }
    CHECK(checked >= 2);
}
