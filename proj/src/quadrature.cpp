#include "axisym/quadrature.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

namespace axisym {

namespace {

// Kronrod 15 nodes on [-1,1] (positive half) and weights; Gauss-7 weights
// for the error estimate.
constexpr std::array<double, 8> kKronrodX = {
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
constexpr std::array<double, 8> kKronrodW = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
constexpr std::array<double, 4> kGaussW = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double ik = kKronrodW[0] * f0;
    double ig = kGaussW[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kKronrodX[i];
        const double fv = f(c - dx) + f(c + dx);
        ik += kKronrodW[i] * fv;
        if (i % 2 == 0) ig += kGaussW[i / 2] * fv;
    }
    ik *= h;
    ig *= h;
    const double diff = std::abs(ik - ig);
    // Standard QUADPACK-style error sharpening.
    const double err = diff > 0.0 ? diff * std::min(1.0, std::pow(200.0 * diff, 1.5)) : 0.0;
    return {ik, std::max(err, std::abs(ik) * 1e-16)};
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec) {
    spec.validate();
    struct Seg {
        double a, b, value, error;
        bool operator<(const Seg& o) const { return error < o.error; }
    };
    std::priority_queue<Seg> heap;
    PanelResult first = gk15(f, a, b);
    heap.push({a, b, first.value, first.error});
    double total = first.value;
    double toterr = first.error;
    for (int iter = 0; iter < spec.max_refinements; ++iter) {
        if (toterr <= spec.abs_tol || toterr <= spec.rel_tol * std::abs(total)) return total;
        Seg worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; accept its estimate
            toterr -= worst.error;
            heap.push({worst.a, worst.b, worst.value, 0.0});
            continue;
        }
        PanelResult l = gk15(f, worst.a, mid);
        PanelResult r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        toterr += l.error + r.error - worst.error;
        heap.push({worst.a, mid, l.value, l.error});
        heap.push({mid, worst.b, r.value, r.error});
    }
    if (toterr <= spec.abs_tol || toterr <= spec.rel_tol * std::abs(total)) return total;
    throw QuadratureError("integrate_adaptive: no convergence within max_refinements (err=" +
                          std::to_string(toterr) + ")");
}

const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Newton iteration on Legendre polynomials, nodes mapped to [0,1].
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            if (n == 1) {
                p1 = x;
            }
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = (n == 1) ? x : p1;
            double pm = (n == 1) ? 1.0 : p0;
            pp = n * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.x[i] = 0.5 * (1.0 - x); // descending cos order -> ascending on [0,1]
        rule.w[i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
    std::reverse(rule.x.begin(), rule.x.end());
    std::reverse(rule.w.begin(), rule.w.end());
    auto [pos, inserted] = cache.emplace(n, std::move(rule));
    return pos->second;
}

int num_threads() {
    static const int n = [] {
        if (const char* env = std::getenv("AXISYM_NUM_THREADS")) {
            const int v = std::atoi(env);
            if (v > 0) return v;
        }
        const unsigned hc = std::thread::hardware_concurrency();
        return hc > 0 ? static_cast<int>(hc) : 1;
    }();
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int nt = std::min<std::size_t>(num_threads(), n ? n : 1);
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace axisym
