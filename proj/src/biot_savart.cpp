#include "axisym/biot_savart.hpp"

#include <algorithm>
#include <cmath>

namespace axisym {

using kernels::detail::grad_kt_jt;
using kernels::detail::j_axis_single;
using kernels::detail::kt_jt;
using kernels::detail::s_of;

namespace {

constexpr double kAxisR = 1e-14;
constexpr double kGuardS = 1e-13; // below this, a quadrature node is inside the dropped core

// Accumulators: Velocity/Gradient use acc[0..1]/acc[0..3], Stream acc[0].
// The kernel bundle adds weight * kernel(x, source) into acc.

inline void add_velocity(double rb, double zb, double r, double z, double rs, double zs,
                         double q3, bool odd, double weight, double* acc) {
    if (r < kAxisR || q3 == 0.0) return;
    if (rb < kAxisR) {
        double j = j_axis_single(zb, r, z) - q3 * j_axis_single(zb, rs, zs);
        if (odd) j -= j_axis_single(zb, r, -z) - q3 * j_axis_single(zb, rs, -zs);
        acc[1] += weight * j;
        return;
    }
    if (s_of(rb, zb, r, z) < kGuardS) return;
    double kt, jt, kti, jti;
    kt_jt(rb, zb, r, z, kt, jt);
    kt_jt(rb, zb, rs, zs, kti, jti);
    double K = kt - q3 * kti;
    double J = jt - q3 * jti;
    if (odd) {
        kt_jt(rb, zb, r, -z, kt, jt);
        kt_jt(rb, zb, rs, -zs, kti, jti);
        K -= kt - q3 * kti;
        J -= jt - q3 * jti;
    }
    acc[0] += weight * K;
    acc[1] += weight * J;
}

inline void add_gradient(double rb, double zb, double r, double z, double rs, double zs,
                         double q3, bool odd, double weight, double* acc) {
    if (r < kAxisR || q3 == 0.0) return;
    if (s_of(rb, zb, r, z) < kGuardS) return;
    double a0, a1, a2, a3, b0, b1, b2, b3;
    grad_kt_jt(rb, zb, r, z, a0, a1, a2, a3);
    grad_kt_jt(rb, zb, rs, zs, b0, b1, b2, b3);
    double g0 = a0 - q3 * b0, g1 = a1 - q3 * b1, g2 = a2 - q3 * b2, g3 = a3 - q3 * b3;
    if (odd) {
        grad_kt_jt(rb, zb, r, -z, a0, a1, a2, a3);
        grad_kt_jt(rb, zb, rs, -zs, b0, b1, b2, b3);
        g0 -= a0 - q3 * b0;
        g1 -= a1 - q3 * b1;
        g2 -= a2 - q3 * b2;
        g3 -= a3 - q3 * b3;
    }
    acc[0] += weight * g0;
    acc[1] += weight * g1;
    acc[2] += weight * g2;
    acc[3] += weight * g3;
}

// Smooth partition of unity at the PV disk edge: 1 inside t <= eta/2,
// 0 beyond t >= eta. Keeps both the adaptive and the disk integrands
// continuous where they hand off.
inline double disk_blend(double t, double eta) {
    const double q = t / eta;
    if (q <= 0.5) return 1.0;
    if (q >= 1.0) return 0.0;
    const double s = (q - 0.5) * 2.0;
    return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

inline double g_single(double rb, double zb, double r, double z, double rs, double zs, double q3) {
    const double s = s_of(rb, zb, r, z);
    if (s < kGuardS) return 0.0;
    const double ss = s_of(rb, zb, rs, zs);
    return std::sqrt(r * rb) / (2.0 * M_PI) * (specfun::f_fast(s) - specfun::f_fast(ss));
}

// Stream kernel is integrated against omega = r * w, so the r factor rides in
// here rather than in the cached weights.
inline void add_stream(double rb, double zb, double r, double z, double rs, double zs, double q3,
                       bool odd, double weight, double* acc) {
    if (r < kAxisR || q3 == 0.0 || rb < kAxisR) return;
    double g = g_single(rb, zb, r, z, rs, zs, q3);
    if (odd) g -= g_single(rb, zb, r, -z, rs, -zs, q3);
    acc[0] += weight * r * g;
}

} // namespace

BiotSavartOptions BiotSavartOptions::from_spec(const QuadratureSpec& spec, bool refine_flag) {
    BiotSavartOptions opt;
    opt.refine = refine_flag;
    // tighter tolerances deepen the adaptive near-field
    if (spec.rel_tol < 1e-10) opt.max_depth += 2;
    return opt;
}

BiotSavartOperator::BiotSavartOperator(const ScalarFieldRZ& w, BiotSavartOptions opt)
    : w_(w), grid_(w.grid_ptr()), opt_(opt), odd_(w.symmetry() == Symmetry::OddInZ) {
    order_hi_ = std::max(2, opt_.gauss_order * (opt_.refine ? 2 : 1));
    order_mid_ = std::max(1, order_hi_ / 2);

    const PolarGrid& g = *grid_;
    const int nr = g.n_rho(), nb = g.n_beta();
    cells_.reserve(g.n_cells());
    for (int i = 0; i + 1 < nr; ++i) {
        for (int j = 0; j + 1 < nb; ++j) {
            Cell c;
            c.u0 = g.u_node(i);
            c.du = g.u_node(i + 1) - c.u0;
            c.v0 = g.v_node(j);
            c.dv = g.v_node(j + 1) - c.v0;
            const PointRZ p00 = g.point(i, j), p10 = g.point(i + 1, j);
            const PointRZ p01 = g.point(i, j + 1), p11 = g.point(i + 1, j + 1);
            c.cr = 0.25 * (p00.r + p10.r + p01.r + p11.r);
            c.cz = 0.25 * (p00.z + p10.z + p01.z + p11.z);
            const PointRZ ctr{c.cr, c.cz};
            c.h = 1.05 * std::sqrt(std::max(std::max(dist2(p00, ctr), dist2(p10, ctr)),
                                            std::max(dist2(p01, ctr), dist2(p11, ctr))));
            c.w00 = w.value(i, j);
            c.w10 = w.value(i + 1, j);
            c.w01 = w.value(i, j + 1);
            c.w11 = w.value(i + 1, j + 1);
            cells_.push_back(c);
        }
    }

    auto build_cache = [&](NodeCache& nc, int order) {
        const GaussRule& rule = gauss_rule(order);
        nc.per_cell = order * order;
        const std::size_t total = cells_.size() * nc.per_cell;
        nc.r.resize(total);
        nc.z.resize(total);
        nc.rs.resize(total);
        nc.zs.resize(total);
        nc.q3.resize(total);
        nc.wW.resize(total);
        nc.sqr.resize(total);
        nc.inv_r.resize(total);
        nc.sqrs.resize(total);
        nc.inv_rs.resize(total);
        std::size_t at = 0;
        for (const Cell& c : cells_) {
            for (int a = 0; a < order; ++a) {
                const double u = c.u0 + c.du * rule.x[a];
                const double wu = rule.w[a] * c.du;
                const double rho = g.rho_of_u(u);
                const double jr = g.drho_du(u);
                for (int b = 0; b < order; ++b, ++at) {
                    const double v = c.v0 + c.dv * rule.x[b];
                    const double beta = g.beta_of_v(v);
                    const double jb = g.dbeta_dv(v);
                    const double r = rho * std::cos(beta);
                    const double z = rho * std::sin(beta);
                    const double jac = jr * jb * rho;
                    const double wgt = wu * rule.w[b] * c.dv * jac;
                    const double fu = rule.x[a], fv = rule.x[b];
                    const double wval = (c.w00 * (1 - fu) + c.w10 * fu) * (1 - fv) +
                                        (c.w01 * (1 - fu) + c.w11 * fu) * fv;
                    nc.r[at] = r;
                    nc.z[at] = z;
                    const double q2 = r * r + z * z;
                    if (q2 > 0.0 && r > 0.0) {
                        nc.rs[at] = r / q2;
                        nc.zs[at] = z / q2;
                        nc.q3[at] = q2 * std::sqrt(q2);
                        nc.sqrs[at] = std::sqrt(nc.rs[at]);
                        nc.inv_rs[at] = 1.0 / nc.rs[at];
                        nc.sqr[at] = std::sqrt(r);
                        nc.inv_r[at] = 1.0 / r;
                    } else {
                        nc.rs[at] = nc.zs[at] = nc.q3[at] = 0.0;
                        nc.sqrs[at] = nc.inv_rs[at] = nc.sqr[at] = nc.inv_r[at] = 0.0;
                    }
                    nc.wW[at] = wgt * wval;
                }
            }
        }
    };
    build_cache(lv1_, 1);
    build_cache(lv2_, order_mid_);
    build_cache(lv4_, order_hi_);
    specfun::warm_up();
}

void BiotSavartOperator::accumulate_far(PointRZ x, const Cell&, const NodeCache& nc,
                                        std::size_t ci, Mode mode, double* acc) const {
    const std::size_t base = ci * nc.per_cell;
    if (mode == Mode::Velocity && x.r >= kAxisR) {
        // hot path: cached sqrt/reciprocal node data, hoisted target factors
        const double rb = x.r, zb = x.z;
        const double inv_rb = 1.0 / rb;
        const double c1 = inv_rb / (M_PI * std::sqrt(rb)); // 1 / (pi rb^{3/2})
        double K = 0.0, J = 0.0;
        for (int n = 0; n < nc.per_cell; ++n) {
            const std::size_t k = base + n;
            const double wgt = nc.wW[k];
            if (nc.q3[k] == 0.0) continue;
            double f, fp;
            // main source
            {
                const double dr = nc.r[k] - rb, dz = nc.z[k] - zb;
                const double s = (dr * dr + dz * dz) * nc.inv_r[k] * inv_rb;
                if (s >= kGuardS) {
                    specfun::f_pair(s, f, fp);
                    const double a = nc.sqr[k] * c1;
                    K += wgt * dz * a * fp;
                    J += wgt * a * (-dr * fp + 0.25 * nc.r[k] * (f - 2.0 * s * fp));
                }
            }
            // image source
            {
                const double dr = nc.rs[k] - rb, dz = nc.zs[k] - zb;
                const double s = (dr * dr + dz * dz) * nc.inv_rs[k] * inv_rb;
                specfun::f_pair(s, f, fp);
                const double a = nc.sqrs[k] * c1 * nc.q3[k];
                K -= wgt * dz * a * fp;
                J -= wgt * a * (-dr * fp + 0.25 * nc.rs[k] * (f - 2.0 * s * fp));
            }
            if (odd_) {
                // reflected source and reflected image
                {
                    const double dr = nc.r[k] - rb, dz = -nc.z[k] - zb;
                    const double s = (dr * dr + dz * dz) * nc.inv_r[k] * inv_rb;
                    if (s >= kGuardS) {
                        specfun::f_pair(s, f, fp);
                        const double a = nc.sqr[k] * c1;
                        K -= wgt * dz * a * fp;
                        J -= wgt * a * (-dr * fp + 0.25 * nc.r[k] * (f - 2.0 * s * fp));
                    }
                }
                {
                    const double dr = nc.rs[k] - rb, dz = -nc.zs[k] - zb;
                    const double s = (dr * dr + dz * dz) * nc.inv_rs[k] * inv_rb;
                    specfun::f_pair(s, f, fp);
                    const double a = nc.sqrs[k] * c1 * nc.q3[k];
                    K += wgt * dz * a * fp;
                    J += wgt * a * (-dr * fp + 0.25 * nc.rs[k] * (f - 2.0 * s * fp));
                }
            }
        }
        acc[0] += K;
        acc[1] += J;
        return;
    }
    for (int n = 0; n < nc.per_cell; ++n) {
        const std::size_t k = base + n;
        const double wgt = nc.wW[k];
        switch (mode) {
            case Mode::Velocity:
                add_velocity(x.r, x.z, nc.r[k], nc.z[k], nc.rs[k], nc.zs[k], nc.q3[k], odd_, wgt,
                             acc);
                break;
            case Mode::Gradient:
                add_gradient(x.r, x.z, nc.r[k], nc.z[k], nc.rs[k], nc.zs[k], nc.q3[k], odd_, wgt,
                             acc);
                break;
            case Mode::Stream:
                add_stream(x.r, x.z, nc.r[k], nc.z[k], nc.rs[k], nc.zs[k], nc.q3[k], odd_, wgt,
                           acc);
                break;
        }
    }
}

// Near-field integration over one cell (or its z-mirror for odd fields) with
// the plain kernel, so the only singular point in play is the target itself.
// Contributions inside the PV disk are removed by the smooth blend; the disk
// rule integrates them in target-centered polar coordinates.
void BiotSavartOperator::adaptive_rect(PointRZ x, const Cell& c, bool mirrored, double u0,
                                       double du, double v0, double dv, int depth, Mode mode,
                                       double eta, double* acc) const {
    const PolarGrid& g = *grid_;
    const double zsign = mirrored ? -1.0 : 1.0;
    const PointRZ p00 = g.point_uv(u0, v0), p10 = g.point_uv(u0 + du, v0);
    const PointRZ p01 = g.point_uv(u0, v0 + dv), p11 = g.point_uv(u0 + du, v0 + dv);
    const double cr = 0.25 * (p00.r + p10.r + p01.r + p11.r);
    const double cz = 0.25 * (p00.z + p10.z + p01.z + p11.z);
    const PointRZ ctr{cr, cz}; // circumradius is reflection invariant
    const double h = 1.05 * std::sqrt(std::max(std::max(dist2(p00, ctr), dist2(p10, ctr)),
                                               std::max(dist2(p01, ctr), dist2(p11, ctr))));
    const double d = dist(x, {cr, zsign * cz});

    if (eta > 0.0 && d + h < 0.5 * eta) return; // fully inside the PV blend

    // Rects must either be separated from the target or small enough to
    // resolve the blend annulus; otherwise subdivide.
    bool separated = d - h > opt_.sep_factor * 2.0 * h;
    if (eta > 0.0 && separated && d - h < eta && 2.0 * h > 0.35 * eta) separated = false;
    const bool floor_hit = depth >= opt_.max_depth || h < 1e-8;
    if (!separated && !floor_hit) {
        const double hu = 0.5 * du, hv = 0.5 * dv;
        adaptive_rect(x, c, mirrored, u0, hu, v0, hv, depth + 1, mode, eta, acc);
        adaptive_rect(x, c, mirrored, u0 + hu, hu, v0, hv, depth + 1, mode, eta, acc);
        adaptive_rect(x, c, mirrored, u0, hu, v0 + hv, hv, depth + 1, mode, eta, acc);
        adaptive_rect(x, c, mirrored, u0 + hu, hu, v0 + hv, hv, depth + 1, mode, eta, acc);
        return;
    }
    if (floor_hit && eta == 0.0 && !separated && d <= 2.0 * h) return; // dropped core

    const int order = separated ? order_mid_ : order_hi_;
    const GaussRule& rule = gauss_rule(order);
    for (int a = 0; a < order; ++a) {
        const double u = u0 + du * rule.x[a];
        const double rho = g.rho_of_u(u);
        const double jr = g.drho_du(u);
        for (int b = 0; b < order; ++b) {
            const double v = v0 + dv * rule.x[b];
            const double beta = g.beta_of_v(v);
            const double r = rho * std::cos(beta);
            const double z = zsign * rho * std::sin(beta);
            double blend = 1.0;
            if (eta > 0.0) {
                const double ddr = r - x.r, ddz = z - x.z;
                blend = 1.0 - disk_blend(std::sqrt(ddr * ddr + ddz * ddz), eta);
                if (blend == 0.0) continue;
            }
            const double jac = jr * g.dbeta_dv(v) * rho;
            const double wgt = blend * rule.w[a] * du * rule.w[b] * dv * jac;
            const double q2 = r * r + z * z;
            double rs = 0, zs = 0, q3 = 0;
            if (q2 > 0.0) {
                rs = r / q2;
                zs = z / q2;
                q3 = q2 * std::sqrt(q2);
            }
            // local bilinear in the owning cell's parameter rectangle
            const double gu = (u - c.u0) / c.du, gv = (v - c.v0) / c.dv;
            const double wval = zsign * ((c.w00 * (1 - gu) + c.w10 * gu) * (1 - gv) +
                                         (c.w01 * (1 - gu) + c.w11 * gu) * gv);
            const double wW = wgt * wval;
            if (mode == Mode::Velocity)
                add_velocity(x.r, x.z, r, z, rs, zs, q3, /*odd=*/false, wW, acc);
            else if (mode == Mode::Gradient)
                add_gradient(x.r, x.z, r, z, rs, zs, q3, /*odd=*/false, wW, acc);
            else
                add_stream(x.r, x.z, r, z, rs, zs, q3, /*odd=*/false, wW, acc);
        }
    }
}

// Target-centered polar rule over the PV disk. Plain kernel against the
// (odd-extended) interpolated field: the equispaced angles cancel the
// divergent part of the gradient kernels exactly, leaving the principal
// value; for velocity and stream kernels the integrand is simply bounded.
void BiotSavartOperator::disk_contribution(PointRZ x, double eta, Mode mode, double* acc) const {
    const GaussRule& rule = gauss_rule(opt_.disk_nt);
    const int na = opt_.disk_na;
    for (int it = 0; it < opt_.disk_nt; ++it) {
        const double t = eta * rule.x[it];
        const double wt = disk_blend(t, eta) * eta * rule.w[it] * t * (2.0 * M_PI / na);
        if (wt == 0.0) continue;
        double ring[4] = {0, 0, 0, 0};
        for (int ia = 0; ia < na; ++ia) {
            const double alpha = 2.0 * M_PI * (ia + 0.5) / na;
            const double r = x.r + t * std::cos(alpha);
            const double z = x.z + t * std::sin(alpha);
            if (r < kAxisR) continue;
            const double q2 = r * r + z * z;
            if (q2 >= 1.0) continue; // clipped at the boundary (eta keeps this rare)
            const double wval = w_.interpolate({r, z});
            const double rs = r / q2, zs = z / q2, q3 = q2 * std::sqrt(q2);
            if (mode == Mode::Gradient)
                add_gradient(x.r, x.z, r, z, rs, zs, q3, /*odd=*/false, wval, ring);
            else if (mode == Mode::Velocity)
                add_velocity(x.r, x.z, r, z, rs, zs, q3, /*odd=*/false, wval, ring);
            else
                add_stream(x.r, x.z, r, z, rs, zs, q3, /*odd=*/false, wval, ring);
        }
        for (int q = 0; q < 4; ++q) acc[q] += wt * ring[q];
    }
}

double BiotSavartOperator::local_cell_size(PointRZ x) const {
    const PolarGrid& g = *grid_;
    const auto par = g.param_of_point(x, /*clip_rho=*/true);
    const int nr = g.n_rho(), nb = g.n_beta();
    int i = std::clamp(static_cast<int>(par.u * (nr - 1)), 0, nr - 2);
    int j = std::clamp(static_cast<int>(par.v * (nb - 1)), 0, nb - 2);
    const PointRZ p00 = g.point(i, j), p11 = g.point(i + 1, j + 1);
    return std::max(1e-12, dist(p00, p11));
}

void BiotSavartOperator::evaluate(PointRZ x, Mode mode, double* acc) const {
    const double hloc = local_cell_size(x);

    // Axis targets: the u^z kernel is bounded there (u^r vanishes), so plain
    // graded quadrature suffices; adaptivity around degenerate origin cells
    // is both useless and expensive.
    if (x.r < kAxisR) {
        if (mode == Mode::Gradient)
            throw DomainError("velocity_gradient_at: axis targets unsupported");
        for (std::size_t ci = 0; ci < cells_.size(); ++ci) {
            const Cell& c = cells_[ci];
            const double dr = x.r - c.cr, dz = x.z - c.cz;
            const double d = std::sqrt(dr * dr + dz * dz);
            const double ratio = d / c.h;
            const NodeCache& nc =
                ratio > opt_.grade1 ? lv1_ : (ratio > opt_.grade2 ? lv2_ : lv4_);
            accumulate_far(x, c, nc, ci, mode, acc);
        }
        return;
    }

    const double room = std::min(x.r, 1.0 - x.norm());
    double eta = std::min(opt_.disk_frac * hloc, 0.9 * room);
    if (eta < 1e-3 * hloc) eta = 0.0; // boundary/axis targets: adaptive drop-core fallback
    if (mode == Mode::Gradient && eta == 0.0)
        throw DomainError("velocity_gradient_at: target too close to the boundary or axis");

    const double near_lim = std::max(opt_.near_pad * hloc, 1.2 * eta);
    for (std::size_t ci = 0; ci < cells_.size(); ++ci) {
        const Cell& c = cells_[ci];
        const double dr = x.r - c.cr;
        const double dz1 = x.z - c.cz;
        double d = std::sqrt(dr * dr + dz1 * dz1);
        bool mirror_near = false;
        if (odd_) {
            const double dz2 = x.z + c.cz;
            const double dm = std::sqrt(dr * dr + dz2 * dz2);
            mirror_near = (dm - c.h) < near_lim;
            d = std::min(d, dm);
        }
        const bool near = (d - c.h) < near_lim;
        if (near || mirror_near) {
            // plain kernel over the cell and, for odd fields, its z-mirror
            adaptive_rect(x, c, /*mirrored=*/false, c.u0, c.du, c.v0, c.dv, 0, mode, eta, acc);
            if (odd_ && c.cz > 0.0)
                adaptive_rect(x, c, /*mirrored=*/true, c.u0, c.du, c.v0, c.dv, 0, mode, eta, acc);
        } else {
            // gradient kernels decay one order faster, so grade them gentler
            const double ratio = d / c.h * (mode == Mode::Gradient ? 0.5 : 1.0);
            const NodeCache& nc =
                ratio > opt_.grade1 ? lv1_ : (ratio > opt_.grade2 ? lv2_ : lv4_);
            accumulate_far(x, c, nc, ci, mode, acc);
        }
    }
    if (eta > 0.0) disk_contribution(x, eta, mode, acc);
}

VelocitySample BiotSavartOperator::velocity(PointRZ x) const {
    if (!in_closed_ball(x, 1e-12)) throw DomainError("velocity: target outside the closed disk");
    // For odd fields the singular set of the symmetrized kernel lives at the
    // reflected point when zbar < 0; evaluate in the upper half-plane and map
    // back by parity (u^r even, u^z odd).
    if (odd_ && x.z < 0.0) {
        VelocitySample u = velocity({x.r, -x.z});
        return {u.ur, -u.uz};
    }
    double acc[4] = {0, 0, 0, 0};
    evaluate(x, Mode::Velocity, acc);
    VelocitySample u{acc[0], acc[1]};
    if (x.r < kAxisR) u.ur = 0.0; // axis condition, exact
    if (odd_ && x.z == 0.0) u.uz = 0.0;
    return u;
}

double BiotSavartOperator::stream_function(PointRZ x) const {
    if (odd_ && x.z < 0.0) return -stream_function({x.r, -x.z});
    double acc[4] = {0, 0, 0, 0};
    evaluate(x, Mode::Stream, acc);
    return acc[0];
}

VelocityGradient BiotSavartOperator::gradient(PointRZ x) const {
    if (odd_ && x.z < 0.0) {
        const VelocityGradient g = gradient({x.r, -x.z});
        return {g.dur_dr, -g.dur_dz, -g.duz_dr, g.duz_dz};
    }
    double acc[4] = {0, 0, 0, 0};
    evaluate(x, Mode::Gradient, acc);
    // Local (delta) terms of the singular integral: the disk rule yields the
    // principal value; differentiating through the 1/rho kernel adds
    // +/- omega(x)/2 = +/- rbar w(x)/2 on the off-diagonal entries, which is
    // exactly what restores omega = du^r/dz - du^z/dr.
    const double wx = w_.interpolate(x);
    acc[1] += 0.5 * x.r * wx;
    acc[2] -= 0.5 * x.r * wx;
    return {acc[0], acc[1], acc[2], acc[3]};
}

std::vector<VelocitySample> BiotSavartOperator::velocity_many(
    const std::vector<PointRZ>& targets) const {
    std::vector<VelocitySample> out(targets.size());
    parallel_for(targets.size(), [&](std::size_t i) { out[i] = velocity(targets[i]); });
    return out;
}

VelocitySample velocity_at(PointRZ x, const ScalarFieldRZ& w, const QuadratureSpec& quad) {
    BiotSavartOperator op(w, BiotSavartOptions::from_spec(quad));
    return op.velocity(x);
}

std::vector<VelocitySample> velocity_field(const std::vector<PointRZ>& targets,
                                           const ScalarFieldRZ& w, const QuadratureSpec& quad) {
    BiotSavartOperator op(w, BiotSavartOptions::from_spec(quad));
    return op.velocity_many(targets);
}

double stream_function_at(PointRZ x, const ScalarFieldRZ& w, const QuadratureSpec& quad) {
    BiotSavartOperator op(w, BiotSavartOptions::from_spec(quad));
    return op.stream_function(x);
}

VelocityGradient velocity_gradient_at(PointRZ x, const ScalarFieldRZ& w,
                                      const QuadratureSpec& quad) {
    BiotSavartOperator op(w, BiotSavartOptions::from_spec(quad));
    return op.gradient(x);
}

} // namespace axisym
