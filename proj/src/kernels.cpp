#include "axisym/kernels.hpp"

#include <cmath>

namespace axisym {
namespace kernels {

using specfun::f_all;
using specfun::f_pair;
using specfun::FTriple;

using detail::grad_kt_jt;
using detail::j_axis_single;
using detail::kt_jt;
using detail::s_of;

namespace {

inline void guard_s(double rb, double zb, const SourceGeom& src) {
    if (s_of(rb, zb, src.r, src.z) < kSingularS)
        throw SingularKernelError("kernel evaluation at (near-)coincident points");
}

constexpr double kAxisR = 1e-14;

} // namespace

PointRZ image_point(PointRZ y) {
    const double q2 = y.norm2();
    if (q2 == 0.0) throw DomainError("image_point: origin has no image");
    return {y.r / q2, y.z / q2};
}

std::array<double, 3> inversion_identities_check(PointRZ y) {
    const PointRZ e1{1.0, 0.0};
    const PointRZ ys = image_point(y);
    const double dy2 = dist2(y, e1);
    const double dys2 = dist2(ys, e1);
    const double r1 = dys2 - dy2 / y.norm2();
    const double r2 = ys.z / dys2 - y.z / dy2;
    const double r3 = (ys.r - 1.0) / dys2 + 1.0 + (y.r - 1.0) / dy2;
    return {r1, r2, r3};
}

SourceGeom make_source_geom(PointRZ y) {
    SourceGeom g;
    g.r = y.r;
    g.z = y.z;
    const double q2 = y.norm2();
    if (q2 > 0.0) {
        g.rs = y.r / q2;
        g.zs = y.z / q2;
        g.q3 = q2 * std::sqrt(q2);
    }
    return g;
}

double greens_g(PointRZ x, PointRZ y) {
    if (x.r < kAxisR || y.r < kAxisR) return 0.0;
    const double s = s_of(x.r, x.z, y.r, y.z);
    if (s < kSingularS) throw SingularKernelError("greens_g at (near-)coincident points");
    const PointRZ ys = image_point(y);
    const double ss = s_of(x.r, x.z, ys.r, ys.z);
    const double pre = std::sqrt(y.r * x.r) / (2.0 * M_PI);
    return pre * (specfun::f_fast(s) - specfun::f_fast(ss));
}

double corrector_h(PointRZ x, PointRZ y) {
    if (x.r < kAxisR || y.r < kAxisR) return 0.0;
    const PointRZ ys = image_point(y);
    const double ss = s_of(x.r, x.z, ys.r, ys.z);
    return -std::sqrt(y.r * x.r) / (2.0 * M_PI) * specfun::f_fast(ss);
}

KernelPair kernel_pair(PointRZ x, const SourceGeom& src) {
    KernelPair out;
    if (src.r < kAxisR || src.q3 == 0.0) return out; // axis/origin sources carry no weight
    if (x.r < kAxisR) {
        out.k = 0.0;
        out.j = j_axis_single(x.z, src.r, src.z) - src.q3 * j_axis_single(x.z, src.rs, src.zs);
        return out;
    }
    guard_s(x.r, x.z, src);
    double kt, jt, kti, jti;
    kt_jt(x.r, x.z, src.r, src.z, kt, jt);
    kt_jt(x.r, x.z, src.rs, src.zs, kti, jti);
    out.k = kt - src.q3 * kti;
    out.j = jt - src.q3 * jti;
    return out;
}

KernelPair kernel_pair_odd(PointRZ x, const SourceGeom& src) {
    SourceGeom refl = src;
    refl.z = -src.z;
    refl.zs = -src.zs;
    const KernelPair a = kernel_pair(x, src);
    const KernelPair b = kernel_pair(x, refl);
    return {a.k - b.k, a.j - b.j};
}

double kernel_k(PointRZ x, PointRZ y) { return kernel_pair(x, make_source_geom(y)).k; }
double kernel_j(PointRZ x, PointRZ y) { return kernel_pair(x, make_source_geom(y)).j; }

KernelPair symmetrized_kernel(PointRZ x, PointRZ y) {
    return kernel_pair_odd(x, make_source_geom(y));
}

KernelGrad kernel_grad(PointRZ x, const SourceGeom& src) {
    KernelGrad out;
    if (src.r < kAxisR || src.q3 == 0.0) return out;
    if (x.r < kAxisR)
        throw DomainError("kernel_grad: axis targets not supported (use parity conditions)");
    guard_s(x.r, x.z, src);
    double a1, a2, a3, a4, b1, b2, b3, b4;
    grad_kt_jt(x.r, x.z, src.r, src.z, a1, a2, a3, a4);
    grad_kt_jt(x.r, x.z, src.rs, src.zs, b1, b2, b3, b4);
    out.dk_dr = a1 - src.q3 * b1;
    out.dk_dz = a2 - src.q3 * b2;
    out.dj_dr = a3 - src.q3 * b3;
    out.dj_dz = a4 - src.q3 * b4;
    return out;
}

KernelGrad kernel_grad_odd(PointRZ x, const SourceGeom& src) {
    SourceGeom refl = src;
    refl.z = -src.z;
    refl.zs = -src.zs;
    const KernelGrad a = kernel_grad(x, src);
    const KernelGrad b = kernel_grad(x, refl);
    return {a.dk_dr - b.dk_dr, a.dk_dz - b.dk_dz, a.dj_dr - b.dj_dr, a.dj_dz - b.dj_dz};
}

KernelEval kernel_gradients(PointRZ x, PointRZ y) {
    KernelEval ev;
    const SourceGeom src = make_source_geom(y);
    ev.g = greens_g(x, y);
    const KernelPair kp = kernel_pair(x, src);
    ev.k = kp.k;
    ev.j = kp.j;
    ev.grad = kernel_grad(x, src);
    return ev;
}

double stream_kernel(PointRZ x, const SourceGeom& src) {
    return greens_g(x, {src.r, src.z});
}

double stream_kernel_odd(PointRZ x, const SourceGeom& src) {
    if (src.r < kAxisR) return 0.0;
    return greens_g(x, {src.r, src.z}) - greens_g(x, {src.r, -src.z});
}

} // namespace kernels
} // namespace axisym
