#pragma once

#include <vector>

#include "axisym/transport.hpp"

namespace axisym {
namespace scenario {

/// Parameters of the boundary gradient-growth experiment near e1 = (1, 0).
/// The paper's inner scale is a(0) = eps^10; desk-scale runs use a surrogate
/// exponent k (config knob) since eps^10 is far below any affordable grid.
struct ScenarioParams {
    double eps = 0.05;          // b(0) = eps, strip parameter
    double delta = 0.2;         // transition strip width around z = 0
    double big_n = 0.25;        // N, box size of S_N; N < 1/2
    double gamma = M_PI / 6.0;  // sector half-angle, in (0, pi/2)
    int inner_exponent = 2;     // a(0) = eps^k

    double a0() const { return std::pow(eps, inner_exponent); }
    double b0() const { return eps; }

    void validate() const {
        if (!(eps > 0.0) || !(eps < delta)) throw ConfigError("scenario: need 0 < eps < delta");
        if (!(big_n > 0.0) || !(big_n < 0.5)) throw ConfigError("scenario: need 0 < N < 1/2");
        if (!(gamma > 0.0) || !(gamma < M_PI / 2)) throw ConfigError("scenario: gamma in (0, pi/2)");
        if (inner_exponent < 2 || inner_exponent > 10)
            throw ConfigError("scenario: inner_exponent in [2, 10] (a(0) must sit below b(0))");
    }
};

/// Quintic ramp: 0 for x <= x0, 1 for x >= x1, C^2 monotone between.
double quintic_ramp(double x, double x0, double x1);

/// The Kiselev-Sverak style initial data: odd in z, 0 <= w0 <= 1 on D+,
/// identically 1 outside the strip {0 < z < delta}, and 1 on the wedge
/// O(eps^k, eps) so the hyperbolic scenario starts loaded. The sharp inner
/// ramp gives |grad w0| ~ eps^-k.
ScalarFieldRZ ks_initial_data(const ScenarioParams& params, GridPtr grid);

/// Closed-form value of the initial data (used by tests and for analytic
/// gradient estimates).
double ks_initial_value(const ScenarioParams& params, PointRZ p);
/// Analytic bound scale for |grad w0| (leading ramp slope).
double ks_grad_scale(const ScenarioParams& params);

enum class Region { S_N, Q, D1Gamma, D2Gamma, OSet };

bool in_S_N(PointRZ y, const ScenarioParams& p);
/// Q(xbar) = {1-N < r < rbar, zbar < z < N} cap D.
bool in_Q(PointRZ y, PointRZ xbar, const ScenarioParams& p);
/// Sector angle at e1: phi = atan2(1 - r, z), measured from the line r = 1.
bool in_D1(PointRZ y, const ScenarioParams& p);
bool in_D2(PointRZ y, const ScenarioParams& p);
/// O(z1', z1'') = {(r,z) in D+ : z > 1 - r, z1' < z < z1''} (strict).
bool in_O(PointRZ y, double z1, double z2);

/// Tag dispatch for the CLI; Q uses xbar, OSet uses (z1, z2).
bool region_membership(PointRZ y, Region which, const ScenarioParams& p, PointRZ xbar = {1, 0},
                       double z1 = 0.0, double z2 = 0.0);

/// max/min of u^z over the diagonal region {(r, z) in D+, z > 1 - r} at a
/// ladder of heights; the raw material for the a(t), b(t) ODEs.
struct UzProfile {
    double t = 0.0;
    std::vector<double> z_levels;
    std::vector<double> uz_max;
    std::vector<double> uz_min;
};
UzProfile sample_uz_profile(const VelocityField& vel, double t, double z_lo = 1e-7,
                            double z_hi = 0.5, int n_levels = 64, int n_r = 24);

/// Integrates a' = max u^z(a), b' = min u^z(b) through the sampled profiles
/// (linear in t, log-linear in z). Breakdown (a crossing b) is flagged, not
/// thrown.
struct ABSeries {
    std::vector<double> t;
    std::vector<double> a;
    std::vector<double> b;
    bool breakdown = false;
};
ABSeries track_a_b(const std::vector<UzProfile>& profiles, const ScenarioParams& params,
                   int substeps_per_interval = 8);

} // namespace scenario
} // namespace axisym
