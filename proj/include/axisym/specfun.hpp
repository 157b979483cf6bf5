#pragma once

#include <string>
#include <vector>

#include "axisym/quadrature.hpp"

namespace axisym {
namespace specfun {

// F(s) = int_0^pi cos(t) / sqrt(2(1-cos t) + s) dt.
// Log-singular as s -> 0, decays like (pi/2) s^(-3/2) as s -> infinity.

enum class RegimeKind { NearZero, Mid, NearInfinity };

/// Switch points of the piecewise fast evaluator. Regime selection is a pure
/// function of s and the two switches.
struct FRegime {
    double switch_lo = 1e-3;
    double switch_hi = 1e3;

    void validate() const {
        if (!(switch_lo > 0.0) || !(switch_lo < switch_hi))
            throw ConfigError("FRegime: need 0 < switch_lo < switch_hi");
    }
    RegimeKind classify(double s) const {
        return s < switch_lo ? RegimeKind::NearZero
                             : (s > switch_hi ? RegimeKind::NearInfinity : RegimeKind::Mid);
    }
};

/// Slow certified evaluation of F, F', F'', F''' by adaptive quadrature of the
/// half-angle form of the defining integral. Throws QuadratureError when the
/// requested tolerance is unreachable within spec.max_refinements.
double f_oracle(double s, const QuadratureSpec& spec = {});
double f_prime_oracle(double s, const QuadratureSpec& spec = {});
double f_second_oracle(double s, const QuadratureSpec& spec = {});
double f_third_oracle(double s, const QuadratureSpec& spec = {});

/// Fast piecewise evaluation: truncated expansions at 0 and infinity, cubic
/// Hermite tables (built once from the oracle) in between.
/// |fast - oracle| <= 1e-8 over [1e-8, 1e8].
double f_fast(double s, const FRegime& regime = {});
double f_prime(double s, const FRegime& regime = {});
double f_second(double s, const FRegime& regime = {});

/// All three values with at most one table lookup per function; the hot path
/// for kernel evaluation.
struct FTriple {
    double f;
    double fp;
    double fpp;
};
FTriple f_all(double s);
/// F and F' only (velocity kernels do not need F'').
void f_pair(double s, double& f, double& fp);

/// Builds the mid-range tables eagerly (they are otherwise built on first
/// use). Safe to call from multiple threads.
void warm_up();

/// Table serialization (optional external interface). The table format is a
/// versioned little-endian binary blob; load rejects mismatched versions.
void dump_mid_table(const std::string& path);

/// Bound-shape verification for |F^(k)| <= C min(s^-tau_k, s^-(k+3/2)),
/// tau_0 in (0, 1/2], tau_k = k for k >= 1. Reports the fitted constant
/// (max ratio) per k; finite ratios mean the bound shape holds on the sample.
struct BoundReport {
    double tau0 = 0.5;
    double max_ratio_f = 0.0;
    double max_ratio_fp = 0.0;
    double max_ratio_fpp = 0.0;
    std::size_t n_samples = 0;
    bool all_finite = false;
    std::string to_json() const;
};
BoundReport verify_f_bounds(const std::vector<double>& samples, double tau0 = 0.5,
                            const QuadratureSpec& spec = {});

} // namespace specfun
} // namespace axisym
