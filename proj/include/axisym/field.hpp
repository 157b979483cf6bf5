#pragma once

#include <functional>
#include <vector>

#include "axisym/grid.hpp"

namespace axisym {

/// Discrete w = omega^theta / r on the half-disk, nodal values on a PolarGrid.
/// OddInZ fields store z >= 0 only; the odd extension is applied on evaluation.
class ScalarFieldRZ {
  public:
    ScalarFieldRZ(GridPtr grid, std::vector<double> values, double time = 0.0);
    ScalarFieldRZ(GridPtr grid, const std::function<double(PointRZ)>& f, double time = 0.0);

    static ScalarFieldRZ zeros(GridPtr grid, double time = 0.0);

    const PolarGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    Symmetry symmetry() const { return grid_->symmetry(); }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    const std::vector<double>& values() const { return values_; }
    double value(int i, int j) const { return values_[grid_->node_index(i, j)]; }
    double& value(int i, int j) { return values_[grid_->node_index(i, j)]; }

    /// Recorded sup norm of the initial data this field descends from.
    double sup0() const { return sup0_; }
    void set_sup0(double s) { sup0_ = s; }
    double sup_norm() const;

    /// Bilinear interpolation in (u, v) parameter space. Points outside the
    /// closed half-disk throw unless clip is set.
    double interpolate(PointRZ p, bool clip = false) const;

    /// Catmull-Rom interpolation, cubic in index space. With clip set the
    /// result is limited to the local bilinear stencil's range
    /// (quasi-monotone; transport default).
    double interpolate_cubic(PointRZ p, bool clip) const;
    double interpolate_cubic_clipped(PointRZ p) const { return interpolate_cubic(p, true); }

    /// Enforces the OddInZ constraints exactly (w = 0 on the z = 0 node row)
    /// and ring-0 consistency (all nodes at rho = 0 share one value).
    void enforce_symmetry();

  private:
    GridPtr grid_;
    std::vector<double> values_;
    double time_ = 0.0;
    double sup0_ = 0.0;
};

/// Cartesian gradient (dw/dr, dw/dz) at an interior node via centered
/// differences in parameter space (one-sided at edges). Invalid at rho = 0.
struct NodeGradient {
    double dr = 0.0;
    double dz = 0.0;
    bool valid = false;
};
NodeGradient node_gradient(const ScalarFieldRZ& w, int i, int j);

} // namespace axisym
