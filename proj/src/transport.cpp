#include "axisym/transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace axisym {

VelocityField::VelocityField(GridPtr grid, std::vector<VelocitySample> nodal)
    : grid_(std::move(grid)), nodal_(std::move(nodal)) {
    if (nodal_.size() != grid_->n_nodes())
        throw ConfigError("VelocityField: sample count does not match grid");
    for (const auto& u : nodal_)
        max_speed_ = std::max(max_speed_, std::hypot(u.ur, u.uz));
}

VelocityField VelocityField::solve(const ScalarFieldRZ& w, const BiotSavartOptions& opt) {
    const PolarGrid& g = w.grid();
    std::vector<PointRZ> targets(g.n_nodes());
    for (int i = 0; i < g.n_rho(); ++i)
        for (int j = 0; j < g.n_beta(); ++j) targets[g.node_index(i, j)] = g.point(i, j);
    BiotSavartOperator op(w, opt);
    return VelocityField(w.grid_ptr(), op.velocity_many(targets));
}

VelocitySample VelocityField::eval(PointRZ p) const {
    const PolarGrid& g = *grid_;
    const auto par = g.param_of_point(p, /*clip_rho=*/true);
    const int nr = g.n_rho(), nb = g.n_beta();
    double su = par.u * (nr - 1), sv = par.v * (nb - 1);
    int i0 = std::clamp(static_cast<int>(su), 0, nr - 2);
    int j0 = std::clamp(static_cast<int>(sv), 0, nb - 2);
    const double fu = std::clamp(su - i0, 0.0, 1.0);
    const double fv = std::clamp(sv - j0, 0.0, 1.0);
    auto lerp = [&](auto&& get) {
        const double a = get(i0, j0) * (1 - fu) + get(i0 + 1, j0) * fu;
        const double b = get(i0, j0 + 1) * (1 - fu) + get(i0 + 1, j0 + 1) * fu;
        return a * (1 - fv) + b * fv;
    };
    VelocitySample out;
    out.ur = lerp([&](int i, int j) { return nodal_[g.node_index(i, j)].ur; });
    out.uz = par.sign *
             lerp([&](int i, int j) { return nodal_[g.node_index(i, j)].uz; });
    return out;
}

PointRZ clip_to_disk(PointRZ p, double tol) {
    if (p.r < 0.0) {
        if (p.r < -tol)
            throw NumericalError("characteristic crossed the axis by more than the tolerance");
        p.r = -p.r;
    }
    const double rho = p.norm();
    if (rho > 1.0) {
        if (rho > 1.0 + tol)
            throw NumericalError("characteristic left the domain by more than the tolerance");
        p.r /= rho;
        p.z /= rho;
    }
    return p;
}

namespace {

PointRZ backtrack(PointRZ x, double dt, const VelocityField& vel,
                  TimeStepSpec::Integrator integ, double clip_tol) {
    auto step = [&](PointRZ p, double h) -> PointRZ {
        const VelocitySample u = vel.eval(p);
        return {p.r - h * u.ur, p.z - h * u.uz};
    };
    if (integ == TimeStepSpec::Integrator::RK2) {
        const PointRZ mid = clip_to_disk(step(x, 0.5 * dt), clip_tol);
        const VelocitySample um = vel.eval(mid);
        return clip_to_disk({x.r - dt * um.ur, x.z - dt * um.uz}, clip_tol);
    }
    // classical RK4 along the frozen field
    const VelocitySample k1 = vel.eval(x);
    const PointRZ x2 = clip_to_disk({x.r - 0.5 * dt * k1.ur, x.z - 0.5 * dt * k1.uz}, clip_tol);
    const VelocitySample k2 = vel.eval(x2);
    const PointRZ x3 = clip_to_disk({x.r - 0.5 * dt * k2.ur, x.z - 0.5 * dt * k2.uz}, clip_tol);
    const VelocitySample k3 = vel.eval(x3);
    const PointRZ x4 = clip_to_disk({x.r - dt * k3.ur, x.z - dt * k3.uz}, clip_tol);
    const VelocitySample k4 = vel.eval(x4);
    return clip_to_disk({x.r - dt / 6.0 * (k1.ur + 2 * k2.ur + 2 * k3.ur + k4.ur),
                         x.z - dt / 6.0 * (k1.uz + 2 * k2.uz + 2 * k3.uz + k4.uz)},
                        clip_tol);
}

} // namespace

namespace {

SimState advect_core(const SimState& state, const TimeStepSpec& spec_in,
                     const VelocityField& vel_mid,
                     std::shared_ptr<const VelocityField> vel_now) {
    const PolarGrid& g = state.w.grid();
    const double hmin = g.min_cell_size();
    const double speed = vel_mid.max_speed();
    TimeStepSpec spec = spec_in;
    if (spec.dt <= 0.0) {
        // automatic step from the CFL budget
        const double cfl_dt = speed > 0.0 ? spec.cfl_limit * hmin / speed : spec.dt_cap;
        spec.dt = std::min(spec.dt_cap, cfl_dt);
        if (!(spec.dt > 0.0) || !std::isfinite(spec.dt))
            throw NumericalError("advect_step: cannot choose a time step");
    } else if (speed * spec.dt > spec.cfl_limit * hmin) {
        std::ostringstream os;
        os << "advect_step: CFL violation (max|u| dt = " << speed * spec.dt << " > "
           << spec.cfl_limit * hmin << "); suggested dt <= " << spec.cfl_limit * hmin / speed;
        throw NumericalError(os.str());
    }
    const double clip_tol = 2.0 * std::max(hmin, speed * spec.dt);

    std::vector<double> next(g.n_nodes());
    parallel_for(g.n_rho(), [&](std::size_t i) {
        for (int j = 0; j < g.n_beta(); ++j) {
            const PointRZ x = g.point(static_cast<int>(i), j);
            const PointRZ dep = backtrack(x, spec.dt, vel_mid, spec.integrator, clip_tol);
            const double val = state.w.interpolate_cubic(dep, spec.monotone_clip);
            next[g.node_index(static_cast<int>(i), j)] = val;
        }
    });
    for (double v : next)
        if (!std::isfinite(v)) throw NumericalError("advect_step: non-finite interpolant value");

    ScalarFieldRZ wn(state.w.grid_ptr(), std::move(next), state.t + spec.dt);
    wn.set_sup0(state.w.sup0());

    SimState out{state.t + spec.dt, std::move(wn), state.particles, vel_now, spec.dt, vel_now};
    for (TrackedParticle& p : out.particles)
        p.current = backtrack(p.current, -spec.dt, vel_mid, spec.integrator, clip_tol);
    return out;
}

} // namespace

SimState advect_step_frozen(const SimState& state, const TimeStepSpec& spec,
                            const VelocityField& vel) {
    spec.validate();
    return advect_core(state, spec, vel, nullptr);
}

SimState advect_step(const SimState& state, const TimeStepSpec& spec,
                     const BiotSavartOptions& opt) {
    spec.validate();
    auto vel_now = std::make_shared<VelocityField>(VelocityField::solve(state.w, opt));

    // Characteristics over [t, t+dt] see the velocity at t+dt/2 to second
    // order via two-time-level extrapolation; the first step (no history)
    // falls back to the frozen field, which costs one O(dt^2) local error.
    // resolve an automatic dt the same way advect_core will
    double dt_eff = spec.dt;
    if (dt_eff <= 0.0) {
        const double speed = vel_now->max_speed();
        const double hmin = state.w.grid().min_cell_size();
        dt_eff = std::min(spec.dt_cap, speed > 0.0 ? spec.cfl_limit * hmin / speed : spec.dt_cap);
    }
    std::shared_ptr<const VelocityField> vel_mid = vel_now;
    if (state.prev_velocity && state.prev_dt > 0.0) {
        // u(t + dt/2) ~ u_n + (dt / 2 dt_prev) (u_n - u_{n-1})
        const double c = 0.5 * dt_eff / state.prev_dt;
        std::vector<VelocitySample> mid(vel_now->nodal());
        const auto& prev = state.prev_velocity->nodal();
        if (prev.size() == mid.size()) {
            for (std::size_t k = 0; k < mid.size(); ++k) {
                mid[k].ur += c * (mid[k].ur - prev[k].ur);
                mid[k].uz += c * (mid[k].uz - prev[k].uz);
            }
            vel_mid = std::make_shared<VelocityField>(state.w.grid_ptr(), std::move(mid));
        }
    }
    TimeStepSpec resolved = spec;
    if (spec.dt <= 0.0) {
        // final automatic dt from the extrapolated field, with safety margin
        const double speed = vel_mid->max_speed();
        const double hmin = state.w.grid().min_cell_size();
        resolved.dt = std::min(spec.dt_cap,
                               speed > 0.0 ? 0.98 * spec.cfl_limit * hmin / speed : spec.dt_cap);
    }
    return advect_core(state, resolved, *vel_mid, vel_now);
}

void VelocityTimeline::add(double t, std::shared_ptr<const VelocityField> field) {
    if (!times_.empty() && t <= times_.back())
        throw ConfigError("VelocityTimeline: snapshot times must increase");
    times_.push_back(t);
    fields_.push_back(std::move(field));
}

VelocitySample VelocityTimeline::eval(PointRZ p, double t) const {
    if (times_.empty()) throw NumericalError("VelocityTimeline: no snapshots");
    const double eps = 1e-12;
    if (t < times_.front() - eps || t > times_.back() + eps)
        throw NumericalError("VelocityTimeline: time outside covered span (provider gap)");
    if (times_.size() == 1) return fields_.front()->eval(p);
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t hi = std::min<std::size_t>(times_.size() - 1,
                                           static_cast<std::size_t>(it - times_.begin()));
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double lam = std::clamp((t - times_[lo]) / (times_[hi] - times_[lo]), 0.0, 1.0);
    const VelocitySample a = fields_[lo]->eval(p);
    const VelocitySample b = fields_[hi]->eval(p);
    return {(1 - lam) * a.ur + lam * b.ur, (1 - lam) * a.uz + lam * b.uz};
}

TrajectoryPath integrate_trajectory(PointRZ x0, double t0, double t1, double dt,
                                    const VelocityTimeline& timeline) {
    if (!(dt > 0.0) || !(t1 > t0)) throw ConfigError("integrate_trajectory: bad time span");
    const double clip_tol = 1e-3;
    TrajectoryPath path;
    path.t.push_back(t0);
    path.x.push_back(clip_to_disk(x0, clip_tol));
    double t = t0;
    PointRZ x = path.x.back();
    while (t < t1 - 1e-14) {
        const double h = std::min(dt, t1 - t);
        const VelocitySample k1 = timeline.eval(x, t);
        const PointRZ x2 =
            clip_to_disk({x.r + 0.5 * h * k1.ur, x.z + 0.5 * h * k1.uz}, clip_tol);
        const VelocitySample k2 = timeline.eval(x2, t + 0.5 * h);
        const PointRZ x3 =
            clip_to_disk({x.r + 0.5 * h * k2.ur, x.z + 0.5 * h * k2.uz}, clip_tol);
        const VelocitySample k3 = timeline.eval(x3, t + 0.5 * h);
        const PointRZ x4 = clip_to_disk({x.r + h * k3.ur, x.z + h * k3.uz}, clip_tol);
        const VelocitySample k4 = timeline.eval(x4, t + h);
        x = clip_to_disk({x.r + h / 6.0 * (k1.ur + 2 * k2.ur + 2 * k3.ur + k4.ur),
                          x.z + h / 6.0 * (k1.uz + 2 * k2.uz + 2 * k3.uz + k4.uz)},
                         clip_tol);
        t += h;
        path.t.push_back(t);
        path.x.push_back(x);
    }
    return path;
}

} // namespace axisym
