#include "axisym/grid.hpp"

#include <algorithm>
#include <cmath>

namespace axisym {

PolarGrid::PolarGrid(GridSpec spec) : spec_(spec) {
    if (spec_.n_rho < 5 || spec_.n_beta < 5)
        throw ConfigError("PolarGrid: need at least 5 nodes per direction");
    if (!(spec_.cluster_rho >= 1.0) || !(spec_.cluster_beta >= 1.0))
        throw ConfigError("PolarGrid: clustering powers must be >= 1");
    if (spec_.symmetry == Symmetry::None && (spec_.n_beta % 2) == 0)
        spec_.n_beta += 1; // keep a node exactly on the symmetry plane
    beta_min_ = spec_.symmetry == Symmetry::OddInZ ? 0.0 : -M_PI / 2.0;

    double hmin = 1.0;
    for (int i = 0; i + 1 < spec_.n_rho; ++i) {
        const double d = rho_of_u(u_node(i + 1)) - rho_of_u(u_node(i));
        hmin = std::min(hmin, d);
    }
    // arc spacing at the outer ring, where beta cells are narrowest
    for (int j = 0; j + 1 < spec_.n_beta; ++j) {
        const double d = std::abs(beta_of_v(v_node(j + 1)) - beta_of_v(v_node(j)));
        hmin = std::min(hmin, d); // rho <= 1
    }
    min_cell_size_ = hmin;
}

double PolarGrid::rho_of_u(double u) const { return 1.0 - std::pow(1.0 - u, spec_.cluster_rho); }

double PolarGrid::u_of_rho(double rho) const {
    rho = std::clamp(rho, 0.0, 1.0);
    return 1.0 - std::pow(1.0 - rho, 1.0 / spec_.cluster_rho);
}

double PolarGrid::drho_du(double u) const {
    return spec_.cluster_rho * std::pow(1.0 - u, spec_.cluster_rho - 1.0);
}

double PolarGrid::beta_of_v(double v) const {
    const double q = spec_.cluster_beta;
    if (spec_.symmetry == Symmetry::OddInZ) return M_PI / 2.0 * std::pow(v, q);
    const double t = 2.0 * v - 1.0;
    return M_PI / 2.0 * (t >= 0 ? std::pow(t, q) : -std::pow(-t, q));
}

double PolarGrid::v_of_beta(double beta) const {
    const double q = spec_.cluster_beta;
    if (spec_.symmetry == Symmetry::OddInZ) {
        beta = std::clamp(beta, 0.0, M_PI / 2.0);
        return std::pow(beta / (M_PI / 2.0), 1.0 / q);
    }
    beta = std::clamp(beta, -M_PI / 2.0, M_PI / 2.0);
    const double a = std::pow(std::abs(beta) / (M_PI / 2.0), 1.0 / q);
    return 0.5 * (1.0 + (beta >= 0 ? a : -a));
}

double PolarGrid::dbeta_dv(double v) const {
    const double q = spec_.cluster_beta;
    if (spec_.symmetry == Symmetry::OddInZ) return M_PI / 2.0 * q * std::pow(v, q - 1.0);
    const double t = std::abs(2.0 * v - 1.0);
    return M_PI * q * std::pow(t, q - 1.0);
}

PointRZ PolarGrid::point(int i, int j) const { return point_uv(u_node(i), v_node(j)); }

PointRZ PolarGrid::point_uv(double u, double v) const {
    const double rho = rho_of_u(u);
    const double beta = beta_of_v(v);
    return {rho * std::cos(beta), rho * std::sin(beta)};
}

PolarGrid::ParamPoint PolarGrid::param_of_point(PointRZ p, bool clip_rho) const {
    ParamPoint out;
    if (p.r < 0.0) p.r = -p.r; // even reflection across the axis
    if (spec_.symmetry == Symmetry::OddInZ && p.z < 0.0) {
        p.z = -p.z;
        out.sign = -1.0;
    }
    double rho = p.norm();
    if (rho > 1.0) {
        if (!clip_rho && rho > 1.0 + 1e-12)
            throw DomainError("param_of_point: point outside the closed half-disk");
        rho = 1.0;
    }
    const double beta = rho > 0.0 ? std::atan2(p.z, p.r) : beta_min_;
    out.u = u_of_rho(rho);
    out.v = v_of_beta(beta);
    return out;
}

bool PolarGrid::same_layout(const PolarGrid& o) const {
    return spec_.n_rho == o.spec_.n_rho && spec_.n_beta == o.spec_.n_beta &&
           spec_.cluster_rho == o.spec_.cluster_rho && spec_.cluster_beta == o.spec_.cluster_beta &&
           spec_.symmetry == o.spec_.symmetry;
}

GridPtr make_grid(GridSpec spec) { return std::make_shared<PolarGrid>(spec); }

} // namespace axisym
