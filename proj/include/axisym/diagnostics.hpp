#pragma once

#include <functional>
#include <string>
#include <vector>

#include "axisym/scenario.hpp"

namespace axisym {
namespace diagnostics {

/// Least-squares line through (x, y); r2 is the coefficient of determination.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Max finite-difference gradient magnitude over grid nodes (one-sided at
/// edges, origin ring excluded).
double grad_w_sup(const ScalarFieldRZ& w);

/// Discrete C^alpha quotient: sup over node pairs at dyadic index offsets of
/// |w(x)-w(y)| / |x-y|^alpha, plus the sup norm.
double holder_norm(const ScalarFieldRZ& w, double alpha = 0.5);

/// sup_r |w(r,z) - w(0,z)| / r over nodes (axis-approach quotient of
/// Theorem upper bound part (c)).
double axis_quotient_sup(const ScalarFieldRZ& w);

// ---- Kato-type estimate shape check ----
struct KatoReport {
    double alpha = 0.5;
    double holder = 0.0;
    double sup0 = 0.0;
    std::vector<double> radii;
    std::vector<double> lhs;    // measured sup |grad u| over D_R samples
    std::vector<double> ratio;  // lhs / (sup0 (1 + (R+R^3) log(1 + holder/sup0)))
    double fitted_c1 = 0.0;     // max ratio: single constant covering all R
    double small_over_large = 0.0; // lhs(R_min) / lhs(R_max), radial improvement
    std::string to_json() const;
};
KatoReport kato_check(const ScalarFieldRZ& w, const std::vector<double>& radii,
                      int samples_per_radius = 24, unsigned seed = 2024,
                      const BiotSavartOptions& opt = {});

// ---- trajectory axis-approach rate (Theorem upper bound part (b)) ----
struct AxisRateReport {
    double fitted_c = 0.0; // minimal C with log r(t) >= log r(0) - C t
    bool touched_axis = false;
    std::size_t n_paths = 0;
    std::string to_json() const;
};
AxisRateReport axis_rate_check(const std::vector<TrajectoryPath>& paths);

// ---- key integral over Q(xbar) (hyperbolic feeding integral) ----
/// integral over Q(xbar) of (1-r) z / ((1-r)^2 + z^2)^2 * w(r, z) dr dz.
/// The integrand is smooth on Q away from e1; cells near e1 and cells cut by
/// the circle are refined geometrically.
double key_integral_q(PointRZ xbar, const std::function<double(PointRZ)>& w,
                      const scenario::ScenarioParams& params, double tol_cell = 2e-7);

// ---- Lemma 4.1 expansion residuals ----
struct ExpansionResidual {
    PointRZ x;
    double q_integral = 0.0;
    double main_term = 0.0;
    double full_value = 0.0;
    double residual_scaled = 0.0; // B1 = (full - main)/zbar or B2 = .../(1-rbar)
};
/// u^z expansion in D1 (B1): main = -(4/pi) zbar Q.
ExpansionResidual lemma41_residual_uz(PointRZ x, const BiotSavartOperator& op,
                                      const scenario::ScenarioParams& params);
/// u^r expansion in D2 (B2): main = +(4/pi)(1 - rbar) Q.
ExpansionResidual lemma41_residual_ur(PointRZ x, const BiotSavartOperator& op,
                                      const scenario::ScenarioParams& params);

// ---- double-exponential growth fit ----
/// Linear fit of log(log(g)) vs t for g = grad_sup / sup0 (samples with
/// g <= 1 are dropped and flagged). guarded_slope fits
/// log(1 + log(1 + g)) instead, the exact shape of the a priori upper bound.
struct GrowthFit {
    LinearFit loglog;
    LinearFit guarded;
    bool nonmonotone = false;
    std::size_t dropped = 0;
    std::string to_json() const;
};
GrowthFit double_exp_fit(const std::vector<double>& t, const std::vector<double>& grad_sup,
                         double sup0);

/// Measures of the super-level sets {w > lambda} with respect to r dr dz
/// (conserved by incompressible transport). Per-cell Gauss rule on the
/// interpolated indicator.
std::vector<double> level_set_measures(const ScalarFieldRZ& w,
                                       const std::vector<double>& thresholds);

} // namespace diagnostics
} // namespace axisym
