#pragma once

#include <memory>
#include <vector>

#include "axisym/biot_savart.hpp"

namespace axisym {

struct TimeStepSpec {
    /// Fixed step when positive; <= 0 selects dt from the CFL budget
    /// (cfl_limit * min cell / max |u|) each step.
    double dt = 0.01;
    double dt_cap = 1e300; // upper bound on a chosen step (end-of-run clamp)
    enum class Integrator { RK2, RK4 } integrator = Integrator::RK2;
    double cfl_limit = 3.0; // semi-Lagrangian tolerates Courant numbers > 1
    // The monotone clip enforces the rearrangement bound but flattens smooth
    // extrema by O(h^2) per step; order measurements use the raw cubic.
    bool monotone_clip = true;

    void validate() const {
        if (!(cfl_limit > 0.0)) throw ConfigError("TimeStepSpec: cfl_limit must be positive");
        if (dt > 0.0 && dt > dt_cap) throw ConfigError("TimeStepSpec: dt exceeds dt_cap");
    }
};

struct TrackedParticle {
    int id = 0;
    PointRZ initial;
    PointRZ current;
};

/// Nodal velocity data for one time level, with parity-aware interpolation
/// (u^r even in z, u^z odd in z for OddInZ fields).
class VelocityField {
  public:
    VelocityField(GridPtr grid, std::vector<VelocitySample> nodal);
    static VelocityField solve(const ScalarFieldRZ& w, const BiotSavartOptions& opt = {});

    VelocitySample eval(PointRZ p) const;
    double max_speed() const { return max_speed_; }
    const std::vector<VelocitySample>& nodal() const { return nodal_; }
    GridPtr grid_ptr() const { return grid_; }

  private:
    GridPtr grid_;
    std::vector<VelocitySample> nodal_;
    double max_speed_ = 0.0;
};

struct SimState {
    double t = 0.0;
    ScalarFieldRZ w;
    std::vector<TrackedParticle> particles;
    /// Velocity solved from w at the previous step start; advect_step
    /// extrapolates with it to the half step (two-time-level scheme, second
    /// order in time at one Biot-Savart solve per step). Null on the first
    /// step.
    std::shared_ptr<const VelocityField> prev_velocity;
    double prev_dt = 0.0; // step size that produced this state
    /// Velocity solved from this state's w during the step that produced it
    /// (populated by advect_step; useful for diagnostics cadence).
    std::shared_ptr<const VelocityField> step_velocity;
};


/// One semi-Lagrangian step: velocity solved once from state.w and frozen for
/// the step; backward characteristics per node; quasi-monotone cubic
/// interpolation; OddInZ symmetry re-imposed exactly. Throws on CFL violation
/// (message carries a suggested dt) and on non-finite interpolated values.
SimState advect_step(const SimState& state, const TimeStepSpec& spec,
                     const BiotSavartOptions& opt = {});

/// advect_step against externally supplied velocity data (no Biot-Savart
/// solve). Isolates the stepping/interpolation machinery; used by order
/// measurements and by replay tooling.
SimState advect_step_frozen(const SimState& state, const TimeStepSpec& spec,
                            const VelocityField& vel);

/// Departure/arrival clipping: points leaving the closed disk by less than
/// `tol` are radially projected onto the boundary circle, points below r = 0
/// are reflected; larger excursions raise NumericalError.
PointRZ clip_to_disk(PointRZ p, double tol);

/// Time-interpolated velocity provider built from a sequence of solved
/// velocity fields (snapshot cadence). Queries outside the covered time span
/// raise NumericalError ("provider gap").
class VelocityTimeline {
  public:
    void add(double t, std::shared_ptr<const VelocityField> field);
    VelocitySample eval(PointRZ p, double t) const;
    bool empty() const { return times_.empty(); }

  private:
    std::vector<double> times_;
    std::vector<std::shared_ptr<const VelocityField>> fields_;
};

/// Forward trajectory integration with RK4 against the timeline. The path
/// holds positions at t0 + k dt (last point at t1). Positions stay in the
/// closed disk; clipping tolerance is one part in 1e3 of the radius.
struct TrajectoryPath {
    std::vector<double> t;
    std::vector<PointRZ> x;
};
TrajectoryPath integrate_trajectory(PointRZ x0, double t0, double t1, double dt,
                                    const VelocityTimeline& timeline);

} // namespace axisym
