"""Python-facing smoke tests for the axisymlab core module."""

import math
import os

import pytest

import axisymlab as ax


def test_special_function_values():
    # 50-digit golden value of F(1)
    assert ax.f_oracle(1.0) == pytest.approx(0.39317514837200473104, abs=1e-12)
    assert ax.f_fast(1.0) == pytest.approx(ax.f_oracle(1.0), abs=1e-8)
    # near-zero asymptote -log(s)/2 + log 8 - 2
    s = 1e-8
    assert ax.f_fast(s) + 0.5 * math.log(s) == pytest.approx(math.log(8) - 2, abs=3e-8)
    assert ax.f_prime(1e-7) * 1e-7 == pytest.approx(-0.5, rel=1e-3)
    with pytest.raises(ax.DomainError):
        ax.f_fast(-1.0)


def test_image_point_and_greens():
    assert ax.image_point(0.5, 0.5) == pytest.approx((1.0, 1.0))
    # boundary source: Green's function of the ball vanishes identically
    assert ax.greens_g(0.3, 0.2, 0.6, 0.8) == 0.0
    assert ax.greens_g(0.5, 0.1, 0.4, -0.2) == pytest.approx(0.0345766834050763, abs=1e-7)


def test_velocity_invariants():
    w = ax.make_field(41, 41, 1.5, 1.5, "odd",
                      lambda r, z: max(0.0, 1 - ((r - 0.55) ** 2 + (z - 0.35) ** 2) / 0.09) ** 3)
    op = ax.BiotSavartOperator(w)
    ur, uz = op.velocity(0.0, 0.4)
    assert ur == 0.0  # axis condition, exact
    ur0, uz0 = op.velocity(0.6, 0.0)
    assert uz0 == 0.0  # symmetry plane, odd data
    # no-flow through the boundary circle
    th = 0.7
    ur_b, uz_b = op.velocity(math.cos(th), math.sin(th))
    assert abs(ur_b * math.cos(th) + uz_b * math.sin(th)) <= 1e-3 * w.sup_norm()


def test_scenario_data_and_regions():
    p = ax.ScenarioParams()
    p.eps = 0.15
    p.delta = 0.3
    p.inner_exponent = 2
    w0 = ax.ks_initial_data(p, 65)
    assert w0.sup_norm() <= 1.0 + 1e-12
    assert w0.interpolate(0.5, 0.5) == pytest.approx(1.0)
    assert w0.interpolate(0.5, -0.5) == pytest.approx(-1.0)
    assert ax.in_region("S_N", 0.9, 0.1, p)
    assert not ax.in_region("S_N", 1.0, 0.0, p)  # e1 excluded, open set
    assert ax.in_region("O", 0.95, 0.08, p, 0.05, 0.2)


def test_advect_preserves_bounds():
    w = ax.make_field(33, 33, 1.5, 1.5, "odd",
                      lambda r, z: max(0.0, 1 - ((r - 0.5) ** 2 + (z - 0.35) ** 2) / 0.1) ** 3)
    w1 = ax.advect(w, 0.05, steps=2)
    assert w1.sup_norm() <= w.sup_norm() + 1e-14
    assert w1.time() == pytest.approx(0.1)


def test_tiny_run(tmp_path):
    out = tmp_path / "run"
    cfg = f"""
[grid]
n_rho = 33
n_beta = 33
cluster_rho = 1.8
cluster_beta = 1.8
symmetry = odd
[time]
t_end = 0.02
dt = 0.01
cfl_limit = 6.0
[scenario]
eps = 0.15
delta = 0.3
inner_exponent = 2
[diagnostics]
cadence = 1
kato_in_loop = false
particles = 0.3:0.2
[output]
directory = {out}
"""
    rundir, steps, t_final, under_resolved = ax.run_simulation_text(cfg)
    assert steps == 2
    assert t_final == pytest.approx(0.02)
    assert (out / "manifest.json").exists()
    assert (out / "diagnostics.csv").exists()
    assert (out / "reports" / "diagnostics.json").exists()
