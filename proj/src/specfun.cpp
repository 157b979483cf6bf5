#include "axisym/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>

namespace axisym {
namespace specfun {

namespace {

// Half-angle substitution theta = 2*phi:
//   F(s)    =          int_0^{pi/2} (1 - 2 sin^2 phi) (sin^2 phi + s/4)^{-1/2} dphi
//   F'(s)   = -(1/8)   int_0^{pi/2} (1 - 2 sin^2 phi) (sin^2 phi + s/4)^{-3/2} dphi
//   F''(s)  = +(3/64)  int_0^{pi/2} (1 - 2 sin^2 phi) (sin^2 phi + s/4)^{-5/2} dphi
//   F'''(s) = -(15/512)int_0^{pi/2} (1 - 2 sin^2 phi) (sin^2 phi + s/4)^{-7/2} dphi
// which tames the s -> 0 near-singularity at phi = 0.
double oracle_core(double s, double power, double scale, const QuadratureSpec& spec) {
    if (!(s > 0.0)) throw DomainError("specfun oracle: s must be positive");
    spec.validate();
    const double sig2 = 0.25 * s;
    auto integrand = [sig2, power](double phi) {
        const double sp = std::sin(phi);
        return (1.0 - 2.0 * sp * sp) * std::pow(sp * sp + sig2, power);
    };
    return scale * integrate_adaptive(integrand, 0.0, M_PI / 2.0, spec);
}

// Near-zero series F(s) = -log(s)/2 + log 8 - 2 + sum_n s^n (a_n log s + b_n).
// a1, b1, a2, b2 are exact; a3..b4 are pinned numerically against a 90-digit
// evaluation of the elliptic closed form.
const double kLog8 = std::log(8.0);
const double kA1 = -3.0 / 32.0;
const double kB1 = (3.0 / 16.0) * kLog8 - 1.0 / 16.0;
const double kA2 = 15.0 / 2048.0;
const double kB2 = 31.0 / 2048.0 - (15.0 / 1024.0) * kLog8;
const double kA3 = -0.001068115248941616556807;
const double kB3 = 0.001929552140954284165944;
const double kA4 = 0.0001482388303798657136181;
const double kB4 = -0.0007573320134367838200654;

double f_series0(double s) {
    const double L = std::log(s);
    return -0.5 * L + kLog8 - 2.0 +
           s * (kA1 * L + kB1 + s * (kA2 * L + kB2 + s * (kA3 * L + kB3 + s * (kA4 * L + kB4))));
}
double fp_series0(double s) {
    const double L = std::log(s);
    return -0.5 / s + (kA1 * L + kA1 + kB1) + s * (2.0 * kA2 * L + kA2 + 2.0 * kB2) +
           s * s * (3.0 * kA3 * L + kA3 + 3.0 * kB3) +
           s * s * s * (4.0 * kA4 * L + kA4 + 4.0 * kB4);
}
double fpp_series0(double s) {
    const double L = std::log(s);
    return 0.5 / (s * s) + kA1 / s + (2.0 * kA2 * L + 3.0 * kA2 + 2.0 * kB2) +
           s * (6.0 * kA3 * L + 5.0 * kA3 + 6.0 * kB3) +
           s * s * (12.0 * kA4 * L + 7.0 * kA4 + 12.0 * kB4);
}

// Infinity series F(s) = pi/2 s^-3/2 - 3pi/2 s^-5/2 + 75pi/16 s^-7/2
//                        - 245pi/16 s^-9/2 + 6615pi/128 s^-11/2 + O(s^-13/2),
// derivatives term by term.
double f_seriesInf(double s) {
    const double is = 1.0 / s;
    const double p = M_PI * std::pow(is, 1.5);
    return p * (0.5 + is * (-1.5 + is * (75.0 / 16.0 + is * (-245.0 / 16.0 + is * (6615.0 / 128.0)))));
}
double fp_seriesInf(double s) {
    const double is = 1.0 / s;
    const double p = M_PI * std::pow(is, 1.5);
    return p * is * (-0.75 + is * (15.0 / 4.0 + is * (-525.0 / 32.0 + is * (2205.0 / 32.0))));
}
double fpp_seriesInf(double s) {
    const double is = 1.0 / s;
    const double p = M_PI * std::pow(is, 1.5);
    return p * is * is *
           (15.0 / 8.0 + is * (-105.0 / 8.0 + is * (4725.0 / 64.0 + is * (-24255.0 / 64.0))));
}

// Mid-range cubic Hermite tables on x = log s, uniform spacing, with exact
// derivative data dV/dx = s * V'(s) from the oracle.
struct HermiteTable {
    double x0 = 0.0;
    double dx = 0.0;
    double inv_dx = 0.0;
    std::vector<double> v;  // values
    std::vector<double> d;  // dV/dx at nodes

    double eval(double x) const {
        double t = (x - x0) * inv_dx;
        const int n = static_cast<int>(v.size()) - 1;
        int i = static_cast<int>(t);
        if (i < 0) i = 0;
        if (i >= n) i = n - 1;
        t -= i;
        const double v0 = v[i], v1 = v[i + 1];
        const double d0 = d[i] * dx, d1 = d[i + 1] * dx;
        const double t2 = t * t, t3 = t2 * t;
        return (2.0 * t3 - 3.0 * t2 + 1.0) * v0 + (t3 - 2.0 * t2 + t) * d0 +
               (-2.0 * t3 + 3.0 * t2) * v1 + (t3 - t2) * d1;
    }
};

struct MidTables {
    HermiteTable f, fp, fpp;
    double lo = 0.0, hi = 0.0;

    // fused F, F' lookup sharing the index computation (hot path)
    void eval_pair(double x, double& vf, double& vfp) const {
        double t = (x - f.x0) * f.inv_dx;
        const int n = static_cast<int>(f.v.size()) - 1;
        int i = static_cast<int>(t);
        if (i < 0) i = 0;
        if (i >= n) i = n - 1;
        t -= i;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        const double h10 = t3 - 2.0 * t2 + t;
        const double h01 = -2.0 * t3 + 3.0 * t2;
        const double h11 = t3 - t2;
        vf = h00 * f.v[i] + h10 * f.d[i] * f.dx + h01 * f.v[i + 1] + h11 * f.d[i + 1] * f.dx;
        vfp = h00 * fp.v[i] + h10 * fp.d[i] * fp.dx + h01 * fp.v[i + 1] + h11 * fp.d[i + 1] * fp.dx;
    }
};

constexpr int kMidIntervals = 1600;

MidTables build_mid_tables(double lo, double hi) {
    MidTables t;
    t.lo = lo;
    t.hi = hi;
    const double x0 = std::log(lo), x1 = std::log(hi);
    const int n = kMidIntervals;
    const double dx = (x1 - x0) / n;
    QuadratureSpec spec;
    spec.abs_tol = 1e-15;
    spec.rel_tol = 1e-13;
    auto init = [&](HermiteTable& h) {
        h.x0 = x0;
        h.dx = dx;
        h.inv_dx = 1.0 / dx;
        h.v.resize(n + 1);
        h.d.resize(n + 1);
    };
    init(t.f);
    init(t.fp);
    init(t.fpp);
    std::vector<std::array<double, 6>> rows(n + 1);
    parallel_for(n + 1, [&](std::size_t i) {
        const double s = std::exp(x0 + dx * static_cast<double>(i));
        const double f = f_oracle(s, spec);
        const double fp = f_prime_oracle(s, spec);
        const double fpp = f_second_oracle(s, spec);
        const double fppp = f_third_oracle(s, spec);
        rows[i] = {f, s * fp, fp, s * fpp, fpp, s * fppp};
    });
    for (int i = 0; i <= n; ++i) {
        t.f.v[i] = rows[i][0];
        t.f.d[i] = rows[i][1];
        t.fp.v[i] = rows[i][2];
        t.fp.d[i] = rows[i][3];
        t.fpp.v[i] = rows[i][4];
        t.fpp.d[i] = rows[i][5];
    }
    return t;
}

const MidTables& mid_tables() {
    static const MidTables tables = build_mid_tables(FRegime{}.switch_lo, FRegime{}.switch_hi);
    return tables;
}

} // namespace

double f_oracle(double s, const QuadratureSpec& spec) { return oracle_core(s, -0.5, 1.0, spec); }
double f_prime_oracle(double s, const QuadratureSpec& spec) {
    return oracle_core(s, -1.5, -1.0 / 8.0, spec);
}
double f_second_oracle(double s, const QuadratureSpec& spec) {
    return oracle_core(s, -2.5, 3.0 / 64.0, spec);
}
double f_third_oracle(double s, const QuadratureSpec& spec) {
    return oracle_core(s, -3.5, -15.0 / 512.0, spec);
}

double f_fast(double s, const FRegime& regime) {
    regime.validate();
    if (!(s > 0.0)) throw DomainError("f_fast: s must be positive");
    switch (regime.classify(s)) {
        case RegimeKind::NearZero: return f_series0(s);
        case RegimeKind::NearInfinity: return f_seriesInf(s);
        case RegimeKind::Mid: break;
    }
    return mid_tables().f.eval(std::log(s));
}

double f_prime(double s, const FRegime& regime) {
    regime.validate();
    if (!(s > 0.0)) throw DomainError("f_prime: s must be positive");
    switch (regime.classify(s)) {
        case RegimeKind::NearZero: return fp_series0(s);
        case RegimeKind::NearInfinity: return fp_seriesInf(s);
        case RegimeKind::Mid: break;
    }
    return mid_tables().fp.eval(std::log(s));
}

double f_second(double s, const FRegime& regime) {
    regime.validate();
    if (!(s > 0.0)) throw DomainError("f_second: s must be positive");
    switch (regime.classify(s)) {
        case RegimeKind::NearZero: return fpp_series0(s);
        case RegimeKind::NearInfinity: return fpp_seriesInf(s);
        case RegimeKind::Mid: break;
    }
    return mid_tables().fpp.eval(std::log(s));
}

FTriple f_all(double s) {
    static const FRegime regime{};
    if (!(s > 0.0)) throw DomainError("f_all: s must be positive");
    if (s < regime.switch_lo) return {f_series0(s), fp_series0(s), fpp_series0(s)};
    if (s > regime.switch_hi) return {f_seriesInf(s), fp_seriesInf(s), fpp_seriesInf(s)};
    const MidTables& t = mid_tables();
    const double x = std::log(s);
    return {t.f.eval(x), t.fp.eval(x), t.fpp.eval(x)};
}

void f_pair(double s, double& f, double& fp) {
    static const FRegime regime{};
    if (!(s > 0.0)) throw DomainError("f_pair: s must be positive");
    if (s < regime.switch_lo) {
        f = f_series0(s);
        fp = fp_series0(s);
        return;
    }
    if (s > regime.switch_hi) {
        f = f_seriesInf(s);
        fp = fp_seriesInf(s);
        return;
    }
    mid_tables().eval_pair(std::log(s), f, fp);
}

void warm_up() { mid_tables(); }

void dump_mid_table(const std::string& path) {
    const MidTables& t = mid_tables();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("dump_mid_table: cannot open " + path);
    const char magic[8] = {'A', 'X', 'F', 'T', 'A', 'B', '0', '1'};
    out.write(magic, 8);
    auto wr = [&](const void* p, std::size_t nb) { out.write(static_cast<const char*>(p), nb); };
    const std::uint64_t n = t.f.v.size();
    wr(&n, 8);
    wr(&t.lo, 8);
    wr(&t.hi, 8);
    for (const HermiteTable* h : {&t.f, &t.fp, &t.fpp}) {
        wr(h->v.data(), 8 * h->v.size());
        wr(h->d.data(), 8 * h->d.size());
    }
    if (!out) throw IoError("dump_mid_table: write failed for " + path);
}

BoundReport verify_f_bounds(const std::vector<double>& samples, double tau0,
                            const QuadratureSpec& spec) {
    if (samples.empty()) throw DomainError("verify_f_bounds: samples must be nonempty");
    BoundReport rep;
    rep.tau0 = tau0;
    rep.n_samples = samples.size();
    for (double s : samples) {
        const double f = std::abs(f_oracle(s, spec));
        const double fp = std::abs(f_prime_oracle(s, spec));
        const double fpp = std::abs(f_second_oracle(s, spec));
        const double bf = std::min(std::pow(s, -tau0), std::pow(s, -1.5));
        const double bfp = std::min(1.0 / s, std::pow(s, -2.5));
        const double bfpp = std::min(1.0 / (s * s), std::pow(s, -3.5));
        rep.max_ratio_f = std::max(rep.max_ratio_f, f / bf);
        rep.max_ratio_fp = std::max(rep.max_ratio_fp, fp / bfp);
        rep.max_ratio_fpp = std::max(rep.max_ratio_fpp, fpp / bfpp);
    }
    rep.all_finite = std::isfinite(rep.max_ratio_f) && std::isfinite(rep.max_ratio_fp) &&
                     std::isfinite(rep.max_ratio_fpp);
    return rep;
}

std::string BoundReport::to_json() const {
    std::ostringstream os;
    os.precision(12);
    os << "{\"tau0\":" << tau0 << ",\"n_samples\":" << n_samples
       << ",\"max_ratio_f\":" << max_ratio_f << ",\"max_ratio_fp\":" << max_ratio_fp
       << ",\"max_ratio_fpp\":" << max_ratio_fpp
       << ",\"all_finite\":" << (all_finite ? "true" : "false") << "}";
    return os.str();
}

} // namespace specfun
} // namespace axisym
