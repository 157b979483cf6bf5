#include "axisym/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace axisym {
namespace scenario {

double quintic_ramp(double x, double x0, double x1) {
    if (x <= x0) return 0.0;
    if (x >= x1) return 1.0;
    const double s = (x - x0) / (x1 - x0);
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double ks_initial_value(const ScenarioParams& p, PointRZ q) {
    const double sign = q.z >= 0.0 ? 1.0 : -1.0;
    const double z = std::abs(q.z);
    const double a0 = p.a0();
    const double strip = quintic_ramp(z, 0.0, p.delta);
    const double wedge =
        quintic_ramp(z, 0.5 * a0, a0) * quintic_ramp(z + q.r - 1.0, -0.5 * a0, 0.0);
    return sign * (strip + (1.0 - strip) * wedge);
}

double ks_grad_scale(const ScenarioParams& p) {
    // steepest ramp: quintic max slope 15/8 over width a0/2
    return 2.0 * (15.0 / 8.0) / p.a0();
}

ScalarFieldRZ ks_initial_data(const ScenarioParams& params, GridPtr grid) {
    params.validate();
    if (grid->symmetry() != Symmetry::OddInZ)
        throw ConfigError("ks_initial_data: scenario data requires an OddInZ grid");
    // the strip must be resolved: at least 4 node rows inside 0 < z < delta
    int rows_in_strip = 0;
    for (int j = 1; j < grid->n_beta(); ++j) {
        const double beta = grid->beta_of_v(grid->v_node(j));
        if (std::sin(beta) < params.delta) ++rows_in_strip;
    }
    if (rows_in_strip < 4)
        throw ConfigError("ks_initial_data: grid too coarse for the strip width delta");
    return ScalarFieldRZ(std::move(grid),
                         [&params](PointRZ p) { return ks_initial_value(params, p); });
}

bool in_S_N(PointRZ y, const ScenarioParams& p) {
    return y.r > 1.0 - p.big_n && y.r < 1.0 && y.z > 0.0 && y.z < p.big_n && in_closed_ball(y);
}

bool in_Q(PointRZ y, PointRZ xbar, const ScenarioParams& p) {
    return y.r > 1.0 - p.big_n && y.r < xbar.r && y.z > xbar.z && y.z < p.big_n &&
           in_closed_ball(y);
}

namespace {
// angle between the vertical line r = 1 and the ray from e1 through y
double sector_angle(PointRZ y) { return std::atan2(1.0 - y.r, y.z); }
} // namespace

bool in_D1(PointRZ y, const ScenarioParams& p) {
    if (!(y.z > 0.0) || y.r > 1.0 || !in_closed_ball(y)) return false;
    const double phi = sector_angle(y);
    return phi >= 0.0 && phi <= M_PI / 2.0 - p.gamma;
}

bool in_D2(PointRZ y, const ScenarioParams& p) {
    if (y.z < 0.0 || y.r > 1.0 || !in_closed_ball(y)) return false;
    const double phi = sector_angle(y);
    return phi >= p.gamma && phi <= M_PI / 2.0;
}

bool in_O(PointRZ y, double z1, double z2) {
    return in_closed_ball(y) && y.z > 0.0 && y.z > 1.0 - y.r && y.z > z1 && y.z < z2;
}

bool region_membership(PointRZ y, Region which, const ScenarioParams& p, PointRZ xbar, double z1,
                       double z2) {
    switch (which) {
        case Region::S_N: return in_S_N(y, p);
        case Region::Q: return in_Q(y, xbar, p);
        case Region::D1Gamma: return in_D1(y, p);
        case Region::D2Gamma: return in_D2(y, p);
        case Region::OSet: return in_O(y, z1, z2);
    }
    return false;
}

UzProfile sample_uz_profile(const VelocityField& vel, double t, double z_lo, double z_hi,
                            int n_levels, int n_r) {
    UzProfile prof;
    prof.t = t;
    prof.z_levels.resize(n_levels);
    prof.uz_max.assign(n_levels, 0.0);
    prof.uz_min.assign(n_levels, 0.0);
    const double llo = std::log(z_lo), lhi = std::log(z_hi);
    for (int k = 0; k < n_levels; ++k) {
        const double z = std::exp(llo + (lhi - llo) * k / (n_levels - 1));
        prof.z_levels[k] = z;
        const double r_min = 1.0 - z;
        const double r_max = std::sqrt(std::max(0.0, 1.0 - z * z));
        double mx = -1e300, mn = 1e300;
        if (r_max > r_min) {
            for (int m = 0; m < n_r; ++m) {
                const double r = r_min + (r_max - r_min) * (m + 0.5) / n_r;
                const double uz = vel.eval({r, z}).uz;
                mx = std::max(mx, uz);
                mn = std::min(mn, uz);
            }
        } else {
            mx = mn = 0.0;
        }
        prof.uz_max[k] = mx;
        prof.uz_min[k] = mn;
    }
    return prof;
}

namespace {

double interp_profile(const std::vector<double>& zl, const std::vector<double>& vals, double z) {
    if (z <= zl.front()) return vals.front();
    if (z >= zl.back()) return vals.back();
    auto it = std::upper_bound(zl.begin(), zl.end(), z);
    const std::size_t hi = it - zl.begin();
    const std::size_t lo = hi - 1;
    const double lam = (std::log(z) - std::log(zl[lo])) / (std::log(zl[hi]) - std::log(zl[lo]));
    return (1 - lam) * vals[lo] + lam * vals[hi];
}

} // namespace

ABSeries track_a_b(const std::vector<UzProfile>& profiles, const ScenarioParams& params,
                   int substeps) {
    params.validate();
    if (profiles.empty()) throw ConfigError("track_a_b: no velocity profiles");
    ABSeries out;
    double a = params.a0();
    double b = params.b0();
    out.t.push_back(profiles.front().t);
    out.a.push_back(a);
    out.b.push_back(b);
    for (std::size_t k = 0; k + 1 < profiles.size(); ++k) {
        const UzProfile& p0 = profiles[k];
        const UzProfile& p1 = profiles[k + 1];
        const double dt = (p1.t - p0.t) / substeps;
        for (int m = 0; m < substeps; ++m) {
            const double tm = p0.t + dt * (m + 0.5);
            const double lam = std::clamp((tm - p0.t) / (p1.t - p0.t), 0.0, 1.0);
            auto uz_max = [&](double z) {
                return (1 - lam) * interp_profile(p0.z_levels, p0.uz_max, z) +
                       lam * interp_profile(p1.z_levels, p1.uz_max, z);
            };
            auto uz_min = [&](double z) {
                return (1 - lam) * interp_profile(p0.z_levels, p0.uz_min, z) +
                       lam * interp_profile(p1.z_levels, p1.uz_min, z);
            };
            // midpoint rule on each scalar ODE
            const double ka = uz_max(a);
            a = std::max(1e-12, a + dt * uz_max(std::max(1e-12, a + 0.5 * dt * ka)));
            const double kb = uz_min(b);
            b = std::max(1e-12, b + dt * uz_min(std::max(1e-12, b + 0.5 * dt * kb)));
        }
        out.t.push_back(p1.t);
        out.a.push_back(a);
        out.b.push_back(b);
        if (a >= b) out.breakdown = true;
    }
    return out;
}

} // namespace scenario
} // namespace axisym
