#include "axisym/field.hpp"

#include <algorithm>
#include <cmath>

namespace axisym {

ScalarFieldRZ::ScalarFieldRZ(GridPtr grid, std::vector<double> values, double time)
    : grid_(std::move(grid)), values_(std::move(values)), time_(time) {
    if (values_.size() != grid_->n_nodes())
        throw ConfigError("ScalarFieldRZ: value count does not match grid");
    enforce_symmetry();
    sup0_ = sup_norm();
}

ScalarFieldRZ::ScalarFieldRZ(GridPtr grid, const std::function<double(PointRZ)>& f, double time)
    : grid_(std::move(grid)), time_(time) {
    values_.resize(grid_->n_nodes());
    for (int i = 0; i < grid_->n_rho(); ++i)
        for (int j = 0; j < grid_->n_beta(); ++j)
            values_[grid_->node_index(i, j)] = f(grid_->point(i, j));
    enforce_symmetry();
    sup0_ = sup_norm();
}

ScalarFieldRZ ScalarFieldRZ::zeros(GridPtr grid, double time) {
    std::vector<double> v(grid->n_nodes(), 0.0);
    return ScalarFieldRZ(std::move(grid), std::move(v), time);
}

double ScalarFieldRZ::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void ScalarFieldRZ::enforce_symmetry() {
    const int nb = grid_->n_beta();
    if (grid_->symmetry() == Symmetry::OddInZ)
        for (int i = 0; i < grid_->n_rho(); ++i) values_[grid_->node_index(i, 0)] = 0.0;
    // rho = 0 ring collapses to one geometric point; propagate a single value
    // (idempotent, so snapshot round trips stay bit exact)
    double v0 = values_[grid_->node_index(0, 0)];
    if (grid_->symmetry() == Symmetry::OddInZ) v0 = 0.0;
    for (int j = 0; j < nb; ++j) values_[grid_->node_index(0, j)] = v0;
}

namespace {

struct StencilPos {
    int i0, j0;
    double fu, fv; // fractional offsets in [0,1]
};

StencilPos locate(const PolarGrid& g, double u, double v) {
    const int nr = g.n_rho(), nb = g.n_beta();
    double su = u * (nr - 1), sv = v * (nb - 1);
    int i0 = static_cast<int>(std::floor(su));
    int j0 = static_cast<int>(std::floor(sv));
    i0 = std::clamp(i0, 0, nr - 2);
    j0 = std::clamp(j0, 0, nb - 2);
    return {i0, j0, std::clamp(su - i0, 0.0, 1.0), std::clamp(sv - j0, 0.0, 1.0)};
}

} // namespace

double ScalarFieldRZ::interpolate(PointRZ p, bool clip) const {
    const auto par = grid_->param_of_point(p, clip);
    const auto st = locate(*grid_, par.u, par.v);
    const double w00 = value(st.i0, st.j0);
    const double w10 = value(st.i0 + 1, st.j0);
    const double w01 = value(st.i0, st.j0 + 1);
    const double w11 = value(st.i0 + 1, st.j0 + 1);
    const double a = w00 * (1 - st.fu) + w10 * st.fu;
    const double b = w01 * (1 - st.fu) + w11 * st.fu;
    return par.sign * (a * (1 - st.fv) + b * st.fv);
}

double ScalarFieldRZ::interpolate_cubic(PointRZ p, bool clip) const {
    const auto par = grid_->param_of_point(p, /*clip_rho=*/true);
    const auto st = locate(*grid_, par.u, par.v);
    const int nr = grid_->n_rho(), nb = grid_->n_beta();
    const bool odd = grid_->symmetry() == Symmetry::OddInZ;

    // Fetch with index-space reflection: the beta map is odd in v for OddInZ
    // grids, so w[i][-j] = -w[i][j] realizes the odd extension exactly.
    auto fetch = [&](int i, int j) -> double {
        i = std::clamp(i, 0, nr - 1);
        double sign = 1.0;
        if (j < 0) {
            if (odd) {
                j = -j;
                sign = -1.0;
            } else {
                j = 0;
            }
        }
        j = std::min(j, nb - 1);
        return sign * values_[grid_->node_index(i, j)];
    };

    auto catmull = [](double wm1, double w0, double w1, double w2, double t) {
        return w0 + 0.5 * t *
                        (w1 - wm1 +
                         t * (2.0 * wm1 - 5.0 * w0 + 4.0 * w1 - w2 +
                              t * (3.0 * (w0 - w1) + w2 - wm1)));
    };

    double rows[4];
    for (int di = -1; di <= 2; ++di) {
        const double wm1 = fetch(st.i0 + di, st.j0 - 1);
        const double w0 = fetch(st.i0 + di, st.j0);
        const double w1 = fetch(st.i0 + di, st.j0 + 1);
        const double w2 = fetch(st.i0 + di, st.j0 + 2);
        rows[di + 1] = catmull(wm1, w0, w1, w2, st.fv);
    }
    double val = catmull(rows[0], rows[1], rows[2], rows[3], st.fu);

    if (clip) {
        // quasi-monotone clip to the bilinear stencil range
        const double c00 = fetch(st.i0, st.j0), c10 = fetch(st.i0 + 1, st.j0);
        const double c01 = fetch(st.i0, st.j0 + 1), c11 = fetch(st.i0 + 1, st.j0 + 1);
        const double lo = std::min(std::min(c00, c10), std::min(c01, c11));
        const double hi = std::max(std::max(c00, c10), std::max(c01, c11));
        val = std::clamp(val, lo, hi);
    }
    return par.sign * val;
}

NodeGradient node_gradient(const ScalarFieldRZ& w, int i, int j) {
    const PolarGrid& g = w.grid();
    NodeGradient out;
    const PointRZ p = g.point(i, j);
    const double rho = p.norm();
    if (rho < 1e-12) return out;

    const int nr = g.n_rho(), nb = g.n_beta();
    auto rho_at = [&](int ii) { return g.rho_of_u(g.u_node(ii)); };
    auto beta_at = [&](int jj) { return g.beta_of_v(g.v_node(jj)); };

    // direct differences against node coordinates; robust where the
    // clustering maps have vanishing metric derivatives (grid edges)
    double w_rho;
    if (i == 0)
        w_rho = (w.value(1, j) - w.value(0, j)) / (rho_at(1) - rho_at(0));
    else if (i == nr - 1)
        w_rho = (w.value(nr - 1, j) - w.value(nr - 2, j)) / (rho_at(nr - 1) - rho_at(nr - 2));
    else
        w_rho = (w.value(i + 1, j) - w.value(i - 1, j)) / (rho_at(i + 1) - rho_at(i - 1));

    double w_beta;
    const bool odd = g.symmetry() == Symmetry::OddInZ;
    if (j == 0) {
        if (odd) // centered through the odd reflection w(-beta) = -w(beta)
            w_beta = w.value(i, 1) / beta_at(1);
        else
            w_beta = (w.value(i, 1) - w.value(i, 0)) / (beta_at(1) - beta_at(0));
    } else if (j == nb - 1) {
        w_beta = (w.value(i, nb - 1) - w.value(i, nb - 2)) / (beta_at(nb - 1) - beta_at(nb - 2));
    } else {
        const double db = beta_at(j + 1) - beta_at(j - 1);
        if (db == 0.0) return out;
        w_beta = (w.value(i, j + 1) - w.value(i, j - 1)) / db;
    }

    const double beta = std::atan2(p.z, p.r);
    out.dr = std::cos(beta) * w_rho - std::sin(beta) / rho * w_beta;
    out.dz = std::sin(beta) * w_rho + std::cos(beta) / rho * w_beta;
    out.valid = std::isfinite(out.dr) && std::isfinite(out.dz);
    return out;
}

} // namespace axisym
