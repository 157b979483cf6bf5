#pragma once

#include <array>

#include "axisym/common.hpp"
#include "axisym/specfun.hpp"

namespace axisym {
namespace kernels {

// Velocity representation on the unit ball through the Green's function G of
// the operator L = -d_rr/r^2 + d_r/r^3 - d_zz/r^2:
//
//   G(x; y) = sqrt(r rbar)/(2 pi) * [ F(s) - F(s*) ],
//   s  = |x - y|^2  / (r  rbar),   y  = (r, z)
//   s* = |x - y*|^2 / (r* rbar),   y* = y / |y|^2   (sphere inversion)
//
// with x = (rbar, zbar) the target. The velocity kernels are
//   K = -(r/rbar) dG/dzbar   (u^r),    J = (r/rbar) dG/drbar   (u^z),
// evaluated analytically through F' (and F'' for their target gradients).

/// Sphere-inversion image of y; throws for y at the origin.
PointRZ image_point(PointRZ y);

/// Residuals of the three inversion identities relating y, y* and e1 = (1,0).
/// All vanish identically; returned for verification.
std::array<double, 3> inversion_identities_check(PointRZ y);

/// Per-source precomputed data shared by every target.
struct SourceGeom {
    double r = 0.0, z = 0.0;    // source point
    double rs = 0.0, zs = 0.0;  // image point
    double q3 = 0.0;            // |y|^3, weight of the image term
};
SourceGeom make_source_geom(PointRZ y);

/// Minimum s (and s*) below which kernel evaluation refuses to proceed; the
/// quadrature layers must treat the singularity explicitly.
inline constexpr double kSingularS = 1e-14;

double greens_g(PointRZ x, PointRZ y);

/// Corrector part H(x,y) = -(sqrt(r rbar)/2pi) F(s*); G = free part + H.
double corrector_h(PointRZ x, PointRZ y);

struct KernelPair {
    double k = 0.0;  // u^r kernel
    double j = 0.0;  // u^z kernel
};

/// Ball kernels (image term included). Handles rbar == 0 via the axis limit
/// (k = 0 there) and returns zeros for sources on the axis or at the origin.
KernelPair kernel_pair(PointRZ x, const SourceGeom& src);

/// Four-fold symmetrized kernels for fields odd in z, integrated over the
/// upper half-disk only: pair(x, y) - pair(x, ytilde), ytilde = (r, -z).
KernelPair kernel_pair_odd(PointRZ x, const SourceGeom& src);

double kernel_k(PointRZ x, PointRZ y);
double kernel_j(PointRZ x, PointRZ y);
KernelPair symmetrized_kernel(PointRZ x, PointRZ y);

struct KernelGrad {
    double dk_dr = 0.0;  // d K / d rbar
    double dk_dz = 0.0;  // d K / d zbar
    double dj_dr = 0.0;  // d J / d rbar
    double dj_dz = 0.0;  // d J / d zbar
};
KernelGrad kernel_grad(PointRZ x, const SourceGeom& src);
KernelGrad kernel_grad_odd(PointRZ x, const SourceGeom& src);

/// Full evaluation bundle (spec's KernelEval).
struct KernelEval {
    double g = 0.0;
    double k = 0.0;
    double j = 0.0;
    KernelGrad grad;
};
KernelEval kernel_gradients(PointRZ x, PointRZ y);

/// Stream-function kernel: G(x,y) itself (integrated against r*w).
double stream_kernel(PointRZ x, const SourceGeom& src);
double stream_kernel_odd(PointRZ x, const SourceGeom& src);

// ---- inline primitives shared with the quadrature hot loops ----
namespace detail {

inline double s_of(double rb, double zb, double r, double z) {
    const double dr = r - rb, dz = z - zb;
    return (dr * dr + dz * dz) / (r * rb);
}

// Free-space kernels, no image term:
//   Kt = (z - zb) sqrt(r) / (pi rb^{3/2}) F'(s)
//   Jt = (r/rb)^{3/2} [ (1/pi)((rb - r)/r) F'(s) + (1/4pi)(F(s) - 2 s F'(s)) ]
inline void kt_jt(double rb, double zb, double r, double z, double& kt, double& jt) {
    const double s = s_of(rb, zb, r, z);
    double f, fp;
    specfun::f_pair(s, f, fp);
    const double sqr = std::sqrt(r);
    const double rb32 = rb * std::sqrt(rb);
    kt = (z - zb) * sqr / (M_PI * rb32) * fp;
    jt = (r * sqr / rb32) *
         ((1.0 / M_PI) * ((rb - r) / r) * fp + (1.0 / (4.0 * M_PI)) * (f - 2.0 * s * fp));
}

// Target gradients of the free-space kernels through F, F', F''.
inline void grad_kt_jt(double rb, double zb, double r, double z, double& dk_dr, double& dk_dz,
                       double& dj_dr, double& dj_dz) {
    const double s = s_of(rb, zb, r, z);
    const specfun::FTriple F = specfun::f_all(s);
    const double sqr = std::sqrt(r);
    const double rb32 = rb * std::sqrt(rb);
    const double rb52 = rb32 * rb;
    const double dzz = z - zb;
    const double drr = r - rb;
    const double ds_drb = -2.0 * drr / (rb * r) - s / rb;
    const double ds_dzb = -2.0 * dzz / (rb * r);

    dk_dr = -(dzz * sqr / (M_PI * rb52)) * (1.5 * F.fp + s * F.fpp) -
            2.0 * dzz * drr / (M_PI * rb52 * sqr) * F.fpp;
    dk_dz = -(sqr / (M_PI * rb32)) * (F.fp + 2.0 * dzz * dzz / (rb * r) * F.fpp);

    const double fm2sfp = F.f - 2.0 * s * F.fp;
    dj_dr = (sqr / M_PI) * ((1.0 / rb32 - 1.5 * (rb - r) / rb52) * F.fp +
                            ((rb - r) / rb32) * F.fpp * ds_drb) +
            (r * sqr / (4.0 * M_PI)) *
                (-1.5 / rb52 * fm2sfp + (1.0 / rb32) * (-F.fp - 2.0 * s * F.fpp) * ds_drb);
    dj_dz = (1.0 / M_PI) * ((rb - r) * sqr / rb32) * F.fpp * ds_dzb +
            (1.0 / (4.0 * M_PI)) * (r * sqr / rb32) * (-F.fp - 2.0 * s * F.fpp) * ds_dzb;
}

// Axis limit rbar -> 0 of J (K vanishes there): r^3 / (2 rho^3) per source.
inline double j_axis_single(double zb, double r, double z) {
    const double dz = z - zb;
    const double rho2 = r * r + dz * dz;
    return 0.5 * r * r * r / (rho2 * std::sqrt(rho2));
}

} // namespace detail

} // namespace kernels
} // namespace axisym
