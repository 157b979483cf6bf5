#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "axisym/transport.hpp"

using namespace axisym;

namespace {

double bump(PointRZ p, PointRZ c, double rad) {
    const double d2 = dist2(p, c) / (rad * rad);
    if (d2 >= 1.0) return 0.0;
    const double q = 1.0 - d2;
    return q * q * q;
}

ScalarFieldRZ smooth_odd_field(int n) {
    GridSpec gs{n, n, 1.5, 1.5, Symmetry::OddInZ};
    return ScalarFieldRZ(make_grid(gs), [](PointRZ p) { return bump(p, {0.5, 0.35}, 0.32); });
}

} // namespace

TEST_CASE("zero field: state unchanged") {
    SimState s{0.0, ScalarFieldRZ::zeros(make_grid({33, 33, 1.5, 1.5, Symmetry::OddInZ})), {}};
    const SimState s1 = advect_step(s, {0.05});
    CHECK(s1.t == doctest::Approx(0.05));
    for (std::size_t k = 0; k < s1.w.values().size(); ++k) CHECK(s1.w.values()[k] == 0.0);
}

TEST_CASE("constant field is transported to itself") {
    GridSpec gs{41, 41, 1.5, 1.5, Symmetry::None};
    SimState s{0.0, ScalarFieldRZ(make_grid(gs), [](PointRZ) { return 0.7; }), {}};
    TimeStepSpec ts;
    ts.dt = 0.02;
    const SimState s1 = advect_step(s, ts);
    double worst = 0.0;
    for (double v : s1.w.values()) worst = std::max(worst, std::abs(v - 0.7));
    CHECK(worst <= 1e-12); // clipped interpolation of a constant is exact
}

TEST_CASE("sup norm never increases and odd symmetry is exact") {
    SimState s{0.0, smooth_odd_field(41), {}};
    const double sup0 = s.w.sup_norm();
    TimeStepSpec ts;
    ts.dt = 0.05;
    SimState cur = s;
    for (int k = 0; k < 3; ++k) {
        cur = advect_step(cur, ts);
        CHECK(cur.w.sup_norm() <= sup0 + 1e-14);
        for (int i = 0; i < cur.w.grid().n_rho(); ++i) CHECK(cur.w.value(i, 0) == 0.0);
    }
    CHECK(cur.t == doctest::Approx(0.15));
}

TEST_CASE("Richardson step-halving ratio near the RK2 order") {
    // Temporal order is visible where the stepping error dominates the
    // grid-coupled floor, i.e. at Courant numbers well above one (the natural
    // semi-Lagrangian regime); dt-uniform runs to a fixed horizon.
    GridSpec gs{49, 49, 1.5, 1.5, Symmetry::OddInZ};
    ScalarFieldRZ w0(make_grid(gs), [](PointRZ p) { return 6.0 * bump(p, {0.5, 0.35}, 0.4); });
    const SimState s{0.0, w0, {}};
    const double T = 1.6;
    auto run_T = [&](double dt) {
        TimeStepSpec ts{dt};
        ts.cfl_limit = 256.0;
        ts.monotone_clip = false;
        SimState cur = s;
        const int n = static_cast<int>(std::round(T / dt));
        for (int k = 0; k < n; ++k) cur = advect_step(cur, ts);
        return cur;
    };
    const SimState a = run_T(T / 2), b = run_T(T / 4), c = run_T(T / 8);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t k = 0; k < a.w.values().size(); ++k) {
        e1 += std::abs(a.w.values()[k] - b.w.values()[k]);
        e2 += std::abs(b.w.values()[k] - c.w.values()[k]);
    }
    const double ratio = e1 / e2;
    const double nominal = 4.0; // 2^p for p = 2
    CHECK(ratio >= 0.7 * nominal);
    CHECK(ratio <= 1.3 * nominal);
}

TEST_CASE("CFL violation raises with a suggested dt") {
    SimState s{0.0, smooth_odd_field(33), {}};
    TimeStepSpec ts;
    ts.dt = 1e3;
    ts.cfl_limit = 0.5;
    CHECK_THROWS_WITH_AS(advect_step(s, ts), doctest::Contains("suggested dt"), NumericalError);
}

TEST_CASE("axis and symmetry-plane trajectories are invariant") {
    const auto w = smooth_odd_field(41);
    auto vf = std::make_shared<VelocityField>(VelocityField::solve(w));
    VelocityTimeline tl;
    tl.add(0.0, vf);
    tl.add(1.0, vf);

    const TrajectoryPath axis = integrate_trajectory({0.0, 0.45}, 0.0, 1.0, 0.05, tl);
    for (const PointRZ& p : axis.x) CHECK(std::abs(p.r) <= 1e-10);

    const TrajectoryPath plane = integrate_trajectory({0.55, 0.0}, 0.0, 1.0, 0.05, tl);
    for (const PointRZ& p : plane.x) CHECK(std::abs(p.z) <= 1e-10);
}

TEST_CASE("trajectory reversibility improves at RK4 order") {
    const auto w = smooth_odd_field(41);
    auto vf = std::make_shared<VelocityField>(VelocityField::solve(w));
    auto negate = [&](const VelocityField& f) {
        std::vector<VelocitySample> neg = f.nodal();
        for (auto& u : neg) {
            u.ur = -u.ur;
            u.uz = -u.uz;
        }
        return std::make_shared<VelocityField>(f.grid_ptr(), std::move(neg));
    };
    auto vb = negate(*vf);
    VelocityTimeline fwd, bwd;
    fwd.add(0.0, vf);
    fwd.add(10.0, vf);
    bwd.add(0.0, vb);
    bwd.add(10.0, vb);

    const PointRZ x0{0.45, 0.3};
    auto roundtrip = [&](double dt) {
        const TrajectoryPath out = integrate_trajectory(x0, 0.0, 1.0, dt, fwd);
        const TrajectoryPath back = integrate_trajectory(out.x.back(), 0.0, 1.0, dt, bwd);
        return dist(back.x.back(), x0);
    };
    // The return error is fourth-order small; beyond that the kinks of the
    // bilinear velocity interpolant set a dt-independent floor, so only
    // magnitude and non-degradation are asserted here.
    const double e1 = roundtrip(0.1);
    const double e2 = roundtrip(0.05);
    CHECK(e1 < 1e-7);
    CHECK(e2 < 2.0 * e1 + 1e-12);
}

TEST_CASE("tracked particles move with the flow") {
    SimState s{0.0, smooth_odd_field(41), {{1, {0.5, 0.2}, {0.5, 0.2}}, {2, {0.0, 0.5}, {0.0, 0.5}}}};
    TimeStepSpec ts;
    ts.dt = 0.05;
    const SimState s1 = advect_step(s, ts);
    CHECK(dist(s1.particles[0].current, s.particles[0].current) > 1e-5);
    CHECK(std::abs(s1.particles[1].current.r) <= 1e-12); // axis particle stays on axis
    CHECK(s1.particles[0].initial.r == 0.5);             // initial position preserved
}

TEST_CASE("timeline gap raises") {
    const auto w = smooth_odd_field(33);
    auto vf = std::make_shared<VelocityField>(VelocityField::solve(w));
    VelocityTimeline tl;
    tl.add(0.0, vf);
    tl.add(0.5, vf);
    CHECK_THROWS_AS(tl.eval({0.5, 0.2}, 0.9), NumericalError);
    CHECK_THROWS_AS(integrate_trajectory({0.5, 0.2}, 0.0, 1.0, 0.1, tl), NumericalError);
}
