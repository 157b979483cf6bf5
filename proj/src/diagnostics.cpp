#include "axisym/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace axisym {
namespace diagnostics {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit fit;
    const std::size_t n = std::min(x.size(), y.size());
    fit.n = n;
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double pred = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double grad_w_sup(const ScalarFieldRZ& w) {
    const PolarGrid& g = w.grid();
    double sup = 0.0;
    for (int i = 1; i < g.n_rho(); ++i)
        for (int j = 0; j < g.n_beta(); ++j) {
            const NodeGradient ng = node_gradient(w, i, j);
            if (ng.valid) sup = std::max(sup, std::hypot(ng.dr, ng.dz));
        }
    return sup;
}

double holder_norm(const ScalarFieldRZ& w, double alpha) {
    const PolarGrid& g = w.grid();
    double quot = 0.0;
    const int nr = g.n_rho(), nb = g.n_beta();
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nb; ++j) {
            const PointRZ p = g.point(i, j);
            const double wij = w.value(i, j);
            for (int k = 1; k <= 64; k *= 2) {
                if (i + k < nr) {
                    const double d = dist(p, g.point(i + k, j));
                    if (d > 0)
                        quot = std::max(quot,
                                        std::abs(w.value(i + k, j) - wij) / std::pow(d, alpha));
                }
                if (j + k < nb) {
                    const double d = dist(p, g.point(i, j + k));
                    if (d > 0)
                        quot = std::max(quot,
                                        std::abs(w.value(i, j + k) - wij) / std::pow(d, alpha));
                }
            }
        }
    return w.sup_norm() + quot;
}

double axis_quotient_sup(const ScalarFieldRZ& w) {
    const PolarGrid& g = w.grid();
    double sup = 0.0;
    for (int i = 1; i < g.n_rho(); ++i)
        for (int j = 0; j < g.n_beta(); ++j) {
            const PointRZ p = g.point(i, j);
            if (p.r < 1e-9) continue;
            const double w_axis = w.interpolate({0.0, p.z}, /*clip=*/true);
            sup = std::max(sup, std::abs(w.value(i, j) - w_axis) / p.r);
        }
    return sup;
}

KatoReport kato_check(const ScalarFieldRZ& w, const std::vector<double>& radii,
                      int samples_per_radius, unsigned seed, const BiotSavartOptions& opt) {
    KatoReport rep;
    rep.holder = holder_norm(w, rep.alpha);
    rep.sup0 = w.sup0() > 0 ? w.sup0() : w.sup_norm();
    if (rep.sup0 == 0.0) {
        rep.radii = radii;
        rep.lhs.assign(radii.size(), 0.0);
        rep.ratio.assign(radii.size(), 0.0);
        return rep;
    }
    BiotSavartOperator op(w, opt);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const bool odd = w.symmetry() == Symmetry::OddInZ;
    for (double R : radii) {
        double lhs = 0.0;
        int got = 0;
        int guard = 0;
        while (got < samples_per_radius && guard++ < 10000) {
            PointRZ x{0.02 + (R - 0.02) * uni(rng), 0.0};
            x.z = (odd ? uni(rng) : 2.0 * uni(rng) - 1.0) * 0.95;
            if (x.r <= 0.02 || x.r >= R) continue;
            if (x.norm() > 0.9) continue;
            VelocityGradient gu;
            try {
                gu = op.gradient(x);
            } catch (const DomainError&) {
                continue;
            }
            lhs = std::max(lhs, std::max({std::abs(gu.dur_dr), std::abs(gu.dur_dz),
                                          std::abs(gu.duz_dr), std::abs(gu.duz_dz)}));
            ++got;
        }
        rep.radii.push_back(R);
        rep.lhs.push_back(lhs);
        const double denom =
            rep.sup0 * (1.0 + (R + R * R * R) * std::log(1.0 + rep.holder / rep.sup0));
        rep.ratio.push_back(lhs / denom);
        rep.fitted_c1 = std::max(rep.fitted_c1, rep.ratio.back());
    }
    if (!rep.lhs.empty()) {
        const auto [mn, mx] = std::minmax_element(rep.radii.begin(), rep.radii.end());
        rep.small_over_large = rep.lhs[mn - rep.radii.begin()] /
                               std::max(1e-300, rep.lhs[mx - rep.radii.begin()]);
    }
    return rep;
}

std::string KatoReport::to_json() const {
    std::ostringstream os;
    os.precision(10);
    os << "{\"alpha\":" << alpha << ",\"holder\":" << holder << ",\"sup0\":" << sup0
       << ",\"fitted_c1\":" << fitted_c1 << ",\"small_over_large\":" << small_over_large
       << ",\"rows\":[";
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (i) os << ',';
        os << "{\"R\":" << radii[i] << ",\"lhs\":" << lhs[i] << ",\"ratio\":" << ratio[i] << "}";
    }
    os << "]}";
    return os.str();
}

AxisRateReport axis_rate_check(const std::vector<TrajectoryPath>& paths) {
    AxisRateReport rep;
    rep.n_paths = paths.size();
    for (const TrajectoryPath& path : paths) {
        if (path.x.empty()) continue;
        const double r0 = path.x.front().r;
        if (r0 <= 0.0) {
            rep.touched_axis = true;
            continue;
        }
        for (std::size_t k = 1; k < path.x.size(); ++k) {
            const double t = path.t[k] - path.t.front();
            if (t <= 0) continue;
            const double r = path.x[k].r;
            if (r <= 1e-12) {
                rep.touched_axis = true;
                continue;
            }
            rep.fitted_c = std::max(rep.fitted_c, (std::log(r0) - std::log(r)) / t);
        }
    }
    rep.fitted_c = std::max(rep.fitted_c, 0.0);
    return rep;
}

std::string AxisRateReport::to_json() const {
    std::ostringstream os;
    os.precision(10);
    os << "{\"fitted_c\":" << fitted_c << ",\"touched_axis\":" << (touched_axis ? "true" : "false")
       << ",\"n_paths\":" << n_paths << "}";
    return os.str();
}

namespace {

double q_integrand(PointRZ y) {
    const double t = 1.0 - y.r;
    const double d = t * t + y.z * y.z;
    return t * y.z / (d * d);
}

// Recursive panel integration of q_integrand * w over a rectangle clipped to
// the disk: refine panels cut by the circle and panels close to e1 relative
// to their size.
double q_panel(double r0, double r1, double z0, double z1,
               const std::function<double(PointRZ)>& w, int depth, double tol_cell) {
    const double dr = r1 - r0, dz = z1 - z0;
    if (dr <= 0 || dz <= 0) return 0.0;
    const double c_in0 = r0 * r0 + z0 * z0; // nearest corner to origin
    const double c_out = r1 * r1 + z1 * z1; // farthest corner
    if (c_in0 >= 1.0) return 0.0;           // fully outside the disk
    const bool cut = c_out > 1.0;
    const double de1 = std::hypot(std::max(0.0, 1.0 - r1), z0); // panel distance to e1
    const double size = std::max(dr, dz);
    const bool near_e1 = size > 0.25 * std::max(de1, 1e-9);
    if (depth < 24 && size * size > tol_cell && (cut || near_e1)) {
        const double rm = 0.5 * (r0 + r1), zm = 0.5 * (z0 + z1);
        return q_panel(r0, rm, z0, zm, w, depth + 1, tol_cell) +
               q_panel(rm, r1, z0, zm, w, depth + 1, tol_cell) +
               q_panel(r0, rm, zm, z1, w, depth + 1, tol_cell) +
               q_panel(rm, r1, zm, z1, w, depth + 1, tol_cell);
    }
    const GaussRule& rule = gauss_rule(4);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const PointRZ y{r0 + dr * rule.x[a], z0 + dz * rule.x[b]};
            if (y.norm2() > 1.0) continue;
            acc += rule.w[a] * rule.w[b] * q_integrand(y) * w(y);
        }
    return acc * dr * dz;
}

} // namespace

double key_integral_q(PointRZ xbar, const std::function<double(PointRZ)>& w,
                      const scenario::ScenarioParams& params, double tol_cell) {
    const double r0 = 1.0 - params.big_n;
    const double r1 = std::min(xbar.r, 1.0);
    const double z0 = std::max(xbar.z, 0.0);
    const double z1 = params.big_n;
    if (r1 <= r0 || z1 <= z0) return 0.0;
    // resolve down to the corner scale set by the probe's distance to e1
    const double corner = std::max({z0, 1.0 - r1, 1e-6});
    const double floor_size = 0.2 * corner;
    return q_panel(r0, r1, z0, z1, w, 0, std::min(tol_cell, floor_size * floor_size));
}

ExpansionResidual lemma41_residual_uz(PointRZ x, const BiotSavartOperator& op,
                                      const scenario::ScenarioParams& params) {
    ExpansionResidual res;
    res.x = x;
    const ScalarFieldRZ& w = op.field();
    res.q_integral =
        key_integral_q(x, [&w](PointRZ y) { return w.interpolate(y, true); }, params);
    res.main_term = -(4.0 / M_PI) * x.z * res.q_integral;
    res.full_value = op.velocity(x).uz;
    res.residual_scaled = x.z != 0.0 ? (res.full_value - res.main_term) / x.z : 0.0;
    return res;
}

ExpansionResidual lemma41_residual_ur(PointRZ x, const BiotSavartOperator& op,
                                      const scenario::ScenarioParams& params) {
    ExpansionResidual res;
    res.x = x;
    const ScalarFieldRZ& w = op.field();
    res.q_integral =
        key_integral_q(x, [&w](PointRZ y) { return w.interpolate(y, true); }, params);
    res.main_term = (4.0 / M_PI) * (1.0 - x.r) * res.q_integral;
    res.full_value = op.velocity(x).ur;
    const double om = 1.0 - x.r;
    res.residual_scaled = om != 0.0 ? (res.full_value - res.main_term) / om : 0.0;
    return res;
}

GrowthFit double_exp_fit(const std::vector<double>& t, const std::vector<double>& grad_sup,
                         double sup0) {
    GrowthFit out;
    if (sup0 <= 0.0) throw ConfigError("double_exp_fit: sup0 must be positive");
    std::vector<double> ts, ys, gs;
    for (std::size_t i = 0; i < std::min(t.size(), grad_sup.size()); ++i) {
        const double g = grad_sup[i] / sup0;
        gs.push_back(g);
        if (g > 1.0 + 1e-12) {
            ts.push_back(t[i]);
            ys.push_back(std::log(std::log(g)));
        } else {
            ++out.dropped;
        }
    }
    for (std::size_t i = 1; i < gs.size(); ++i)
        if (gs[i] < gs[i - 1]) out.nonmonotone = true;
    out.loglog = linear_fit(ts, ys);
    std::vector<double> tg, yg;
    for (std::size_t i = 0; i < std::min(t.size(), grad_sup.size()); ++i) {
        tg.push_back(t[i]);
        yg.push_back(std::log(1.0 + std::log(1.0 + grad_sup[i] / sup0)));
    }
    out.guarded = linear_fit(tg, yg);
    return out;
}

std::vector<double> level_set_measures(const ScalarFieldRZ& w,
                                       const std::vector<double>& thresholds) {
    const PolarGrid& g = w.grid();
    std::vector<double> meas(thresholds.size(), 0.0);
    const GaussRule& rule = gauss_rule(3);
    for (int i = 0; i + 1 < g.n_rho(); ++i)
        for (int j = 0; j + 1 < g.n_beta(); ++j) {
            const double u0 = g.u_node(i), du = g.u_node(i + 1) - u0;
            const double v0 = g.v_node(j), dv = g.v_node(j + 1) - v0;
            const double w00 = w.value(i, j), w10 = w.value(i + 1, j);
            const double w01 = w.value(i, j + 1), w11 = w.value(i + 1, j + 1);
            for (int a = 0; a < 3; ++a) {
                const double u = u0 + du * rule.x[a];
                const double rho = g.rho_of_u(u);
                const double jr = g.drho_du(u);
                for (int b = 0; b < 3; ++b) {
                    const double v = v0 + dv * rule.x[b];
                    const double beta = g.beta_of_v(v);
                    const double r = rho * std::cos(beta);
                    const double jac =
                        rule.w[a] * du * rule.w[b] * dv * jr * g.dbeta_dv(v) * rho * r;
                    const double fu = rule.x[a], fv = rule.x[b];
                    const double wv = (w00 * (1 - fu) + w10 * fu) * (1 - fv) +
                                      (w01 * (1 - fu) + w11 * fu) * fv;
                    for (std::size_t q = 0; q < thresholds.size(); ++q)
                        if (wv > thresholds[q]) meas[q] += jac;
                }
            }
        }
    return meas;
}

std::string GrowthFit::to_json() const {
    std::ostringstream os;
    os.precision(10);
    os << "{\"loglog_slope\":" << loglog.slope << ",\"loglog_r2\":" << loglog.r2
       << ",\"guarded_slope\":" << guarded.slope << ",\"guarded_r2\":" << guarded.r2
       << ",\"n\":" << loglog.n << ",\"dropped\":" << dropped
       << ",\"nonmonotone\":" << (nonmonotone ? "true" : "false") << "}";
    return os.str();
}

} // namespace diagnostics
} // namespace axisym
