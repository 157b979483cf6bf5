#pragma once

#include <memory>
#include <vector>

#include "axisym/common.hpp"

namespace axisym {

enum class Symmetry { None, OddInZ };

/// Body-fitted polar grid on the half-disk D = {r >= 0, r^2 + z^2 <= 1}:
/// (r, z) = (rho cos beta, rho sin beta). Nodes are images of a uniform
/// (u, v) lattice under clustering maps
///   rho  = 1 - (1 - u)^p        (clustered at the boundary circle rho = 1)
///   beta = (pi/2) v^q           (OddInZ, clustered at the e1 ray beta = 0)
///   beta = (pi/2) t |t|^(q-1)   (None, t = 2v - 1, clustered at beta = 0)
/// so index space is uniform and the inverse maps are analytic.
struct GridSpec {
    int n_rho = 65;
    int n_beta = 65;
    double cluster_rho = 2.0;
    double cluster_beta = 2.0;
    Symmetry symmetry = Symmetry::OddInZ;
};

class PolarGrid {
  public:
    explicit PolarGrid(GridSpec spec);

    const GridSpec& spec() const { return spec_; }
    Symmetry symmetry() const { return spec_.symmetry; }
    int n_rho() const { return spec_.n_rho; }
    int n_beta() const { return spec_.n_beta; }
    std::size_t n_nodes() const { return static_cast<std::size_t>(spec_.n_rho) * spec_.n_beta; }
    std::size_t n_cells() const {
        return static_cast<std::size_t>(spec_.n_rho - 1) * (spec_.n_beta - 1);
    }

    double rho_of_u(double u) const;
    double u_of_rho(double rho) const;
    double beta_of_v(double v) const;
    double v_of_beta(double beta) const;
    double drho_du(double u) const;
    double dbeta_dv(double v) const;

    double u_node(int i) const { return static_cast<double>(i) / (spec_.n_rho - 1); }
    double v_node(int j) const { return static_cast<double>(j) / (spec_.n_beta - 1); }
    PointRZ point(int i, int j) const;
    PointRZ point_uv(double u, double v) const;
    std::size_t node_index(int i, int j) const {
        return static_cast<std::size_t>(i) * spec_.n_beta + j;
    }

    /// (u, v) parameters of an arbitrary point of the closed half-disk.
    /// r < 0 reflects evenly; z < 0 reflects for OddInZ grids (caller applies
    /// the sign); rho > 1 clips when clip_rho is set, else throws.
    struct ParamPoint {
        double u = 0.0;
        double v = 0.0;
        double sign = 1.0; // -1 when an OddInZ z-reflection was applied
    };
    ParamPoint param_of_point(PointRZ p, bool clip_rho) const;

    /// Smallest node spacing anywhere (used by CFL logic).
    double min_cell_size() const { return min_cell_size_; }

    bool same_layout(const PolarGrid& other) const;

  private:
    GridSpec spec_;
    double beta_min_ = 0.0;
    double min_cell_size_ = 0.0;
};

using GridPtr = std::shared_ptr<const PolarGrid>;
GridPtr make_grid(GridSpec spec);

} // namespace axisym
