#pragma once

#include <functional>
#include <vector>

#include "axisym/common.hpp"

namespace axisym {

/// Tolerances for adaptive quadrature. The oracle refuses to return values
/// that did not converge within max_refinements.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_refinements = 2000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_refinements <= 0)
            throw ConfigError("QuadratureSpec: tolerances must be positive");
    }
};

/// Adaptive Gauss-Kronrod 7/15 on [a, b]. Bisects the worst interval until
/// the summed error estimate meets the spec. Deterministic for fixed inputs.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec);

/// Nodes/weights of n-point Gauss-Legendre on [0, 1]. n in {1,2,3,4,6,8,12,16,24,32}.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_rule(int n);

} // namespace axisym
