#pragma once

#include <vector>

#include "axisym/field.hpp"
#include "axisym/kernels.hpp"
#include "axisym/quadrature.hpp"

namespace axisym {

struct VelocitySample {
    double ur = 0.0;
    double uz = 0.0;
};

/// 2x2 velocity gradient in (r, z) coordinates.
struct VelocityGradient {
    double dur_dr = 0.0;
    double dur_dz = 0.0;
    double duz_dr = 0.0;
    double duz_dz = 0.0;
};

/// Tuning of the singular-integral quadrature. Defaults satisfy the
/// acceptance tolerances on 128^2 grids; `refine` doubles the cell rules.
struct BiotSavartOptions {
    int gauss_order = 4;      // tensor order on near-mid cells
    bool refine = false;      // double orders (--quad-refine)
    double near_pad = 0.6;    // near set: dist - h < near_pad * h
    double sep_factor = 1.0;  // adaptive acceptance: dist > sep * diam
    int max_depth = 12;       // adaptive subdivision depth
    double grade2 = 6.5;      // d/h below which full order is used
    double grade1 = 16.0;     // d/h below which order/2 is used, above: 1 point
    double disk_frac = 0.35;  // PV disk radius as a fraction of the local cell
    int disk_nt = 24;         // radial Gauss points on the PV disk
    int disk_na = 24;         // equispaced angles on the PV disk

    static BiotSavartOptions from_spec(const QuadratureSpec& spec, bool refine_flag = false);
};

/// Direct O(N * M) evaluation of the Biot-Savart integrals for a discrete w.
/// Construction precomputes per-cell Gauss nodes, image geometry and field
/// values; evaluation is pure and thread-safe across targets.
class BiotSavartOperator {
  public:
    BiotSavartOperator(const ScalarFieldRZ& w, BiotSavartOptions opt = {});

    VelocitySample velocity(PointRZ x) const;
    double stream_function(PointRZ x) const;
    VelocityGradient gradient(PointRZ x) const;

    /// Batched velocity, data-parallel over targets with a fixed per-target
    /// summation order (bit-reproducible for any thread count).
    std::vector<VelocitySample> velocity_many(const std::vector<PointRZ>& targets) const;

    const ScalarFieldRZ& field() const { return w_; }

  private:
    struct Cell {
        double cr, cz, h;          // center and circumradius
        double u0, du, v0, dv;     // parameter rectangle
        double w00, w10, w01, w11; // corner values for local bilinear
    };
    struct NodeCache {
        std::vector<double> r, z, rs, zs, q3, wW;
        std::vector<double> sqr, inv_r, sqrs, inv_rs; // cached sqrt/reciprocals
        int per_cell = 0;
    };

    enum class Mode { Velocity, Stream, Gradient };

    void accumulate_far(PointRZ x, const Cell& c, const NodeCache& nc, std::size_t ci, Mode mode,
                        double* acc) const;
    void adaptive_rect(PointRZ x, const Cell& c, bool mirrored, double u0, double du, double v0,
                       double dv, int depth, Mode mode, double eta, double* acc) const;
    void disk_contribution(PointRZ x, double eta, Mode mode, double* acc) const;
    void evaluate(PointRZ x, Mode mode, double* acc) const;
    double local_cell_size(PointRZ x) const;

    const ScalarFieldRZ& w_;
    GridPtr grid_;
    BiotSavartOptions opt_;
    bool odd_ = false;
    std::vector<Cell> cells_;
    NodeCache lv1_, lv2_, lv4_; // 1x1, (order/2)^2, order^2 rules
    int order_hi_ = 4, order_mid_ = 2;
};

// Spec-level convenience entry points.
VelocitySample velocity_at(PointRZ x, const ScalarFieldRZ& w, const QuadratureSpec& quad = {});
std::vector<VelocitySample> velocity_field(const std::vector<PointRZ>& targets,
                                           const ScalarFieldRZ& w,
                                           const QuadratureSpec& quad = {});
double stream_function_at(PointRZ x, const ScalarFieldRZ& w, const QuadratureSpec& quad = {});
VelocityGradient velocity_gradient_at(PointRZ x, const ScalarFieldRZ& w,
                                      const QuadratureSpec& quad = {});

} // namespace axisym
