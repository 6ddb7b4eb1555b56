import math

import numpy as np
import pytest

from chircav import (
    MeanFieldState,
    SolveOptions,
    SpeciesMoments,
    integrate_to_steady,
    mean_field_rhs,
    solve_steady,
    zeroth_order_state,
)
from chircav import _core

from conftest import baseline, baseline_tied


def rhs_scaled_max_norm(state, params):
    """Max-norm of the time derivative in solver-scaled units."""
    d = mean_field_rhs(state, params)
    y = _core.state_to_vector(d)
    n = params.n_total
    y[0:2] /= math.sqrt(n)
    y[2:] /= n
    return float(np.max(np.abs(y)))


# ------------------------------------------------------------------- rhs


def test_rhs_zero_everything():
    p = baseline(omega_31=0.0, omega_32=0.0, g_a=0.0)
    zero_sp = SpeciesMoments(s12=0j, s13=0j, s23=0j, s11=0.0, s22=0.0, s33=0.0)
    st = MeanFieldState(a=0j, left=zero_sp, right=zero_sp)
    d = mean_field_rhs(st, p)
    assert d.a == 0j
    for sp in (d.left, d.right):
        assert sp.s12 == 0j and sp.s13 == 0j and sp.s23 == 0j
        assert sp.s11 == 0.0 and sp.s22 == 0.0 and sp.s33 == 0.0


def test_rhs_driven_vacuum_only_s13_moves():
    p = baseline(n_left=6e5, n_right=4e5)
    d = mean_field_rhs(zeroth_order_state(p), p)
    o31 = p.omega_31.value
    assert d.a == 0j
    for sp, n_q in ((d.left, 6e5), (d.right, 4e5)):
        assert sp.s13 == pytest.approx(-1j * o31 * n_q, rel=1e-12)
        assert sp.s12 == 0j and sp.s23 == 0j
        assert sp.s11 == 0.0 and sp.s22 == 0.0 and sp.s33 == 0.0


def test_rhs_conserves_population_identically():
    rng = np.random.default_rng(11)
    p = baseline_tied(omega_31=0.02, phi=1.1)
    st = _core.vector_to_state(rng.normal(scale=0.4 * p.n_total, size=18), p.n_left, p.n_right)
    d = mean_field_rhs(st, p)
    for sp in (d.left, d.right):
        assert sp.s11 + sp.s22 + sp.s33 == 0.0


def test_rhs_vanishes_at_solved_steady_state():
    p = baseline_tied()
    opts = SolveOptions()
    rep = solve_steady(p, opts)
    assert rhs_scaled_max_norm(rep.state, p) < 10 * opts.tol_abs


# ------------------------------------------------------------- integration


def test_integrate_stationary_start_converges_at_zero():
    p = baseline(omega_31=0.0)
    traj = integrate_to_steady(p, zeroth_order_state(p), t_max=5.0)
    assert traj.converged_at == 0.0
    assert traj.times[0] == 0.0
    assert traj.states[0] == zeroth_order_state(p)


def test_integrate_reaches_newton_fixed_point():
    p = baseline_tied()
    rep = solve_steady(p, SolveOptions(tol_abs=1e-12))
    traj = integrate_to_steady(p, zeroth_order_state(p), t_max=60.0)
    assert traj.converged_at is not None
    a_dyn = traj.states[-1].a
    assert abs(a_dyn - rep.state.a) / abs(rep.state.a) < 1e-6


def test_integrate_strong_drive_matches_newton():
    p = baseline_tied(omega_31=0.02)
    rep = solve_steady(p, SolveOptions(tol_abs=1e-12))
    traj = integrate_to_steady(p, zeroth_order_state(p), t_max=80.0)
    assert traj.converged_at is not None
    i_dyn = 2 * p.kappa_a.value * abs(traj.states[-1].a) ** 2
    i_newton = 2 * p.kappa_a.value * abs(rep.state.a) ** 2
    assert abs(i_dyn - i_newton) / i_newton < 1e-5


def test_integrate_population_conservation_drift():
    p = baseline_tied(omega_31=0.02, n_left=7e5, n_right=3e5)
    traj = integrate_to_steady(p, zeroth_order_state(p), t_max=30.0)
    for st in traj.states:
        assert st.left.n_molecules == pytest.approx(7e5, rel=1e-9)
        assert st.right.n_molecules == pytest.approx(3e5, rel=1e-9)


def test_integrate_times_strictly_increasing():
    p = baseline_tied()
    traj = integrate_to_steady(p, zeroth_order_state(p), t_max=10.0)
    assert all(t1 < t2 for t1, t2 in zip(traj.times, traj.times[1:]))


def test_population_decay_closed_form():
    # no drives: s22 decays at 2*gamma_21 (with s33 = 0), s33 at
    # 2*(gamma_31 + gamma_32); both follow from the population equations
    p = baseline(omega_31=0.0, omega_32=0.0, gamma_21=0.3, gamma_31=0.2, gamma_32=0.1, n_left=1.0, n_right=1.0)
    s22_0, s33_0 = 0.4, 0.0
    left = SpeciesMoments(s12=0j, s13=0j, s23=0j, s11=1.0 - s22_0 - s33_0, s22=s22_0, s33=s33_0)
    st = MeanFieldState(a=0j, left=left, right=SpeciesMoments.ground(1.0))
    traj = integrate_to_steady(p, st, t_max=2.0, settle_tol=1e-30)
    g21 = p.gamma_21.value
    for t, s in zip(traj.times, traj.states):
        assert s.left.s22 == pytest.approx(s22_0 * math.exp(-2 * g21 * t), abs=1e-8)

    s33_0 = 0.5
    left = SpeciesMoments(s12=0j, s13=0j, s23=0j, s11=1.0 - s33_0, s22=0.0, s33=s33_0)
    st = MeanFieldState(a=0j, left=left, right=SpeciesMoments.ground(1.0))
    traj = integrate_to_steady(p, st, t_max=2.0, settle_tol=1e-30)
    g3 = p.gamma_31.value + p.gamma_32.value
    for t, s in zip(traj.times, traj.states):
        assert s.left.s33 == pytest.approx(s33_0 * math.exp(-2 * g3 * t), abs=1e-8)


def test_integrate_rejects_bad_t_max():
    p = baseline()
    with pytest.raises(ValueError):
        integrate_to_steady(p, zeroth_order_state(p), t_max=0.0)


def test_trajectory_csv_export(tmp_path):
    p = baseline_tied()
    traj = integrate_to_steady(p, zeroth_order_state(p), t_max=3.0, settle_tol=1e-30)
    path = tmp_path / "traj.csv"
    traj.write_csv(path)
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    assert header[0] == "t_us"
    assert len(header) == 1 + 2 + 16  # time, cavity quadratures, 16 moments
    assert len(lines) == 1 + len(traj.times)
    first = [float(v) for v in lines[1].split(",")]
    assert first[0] == 0.0
    assert first[header.index("s11_left")] == p.n_left
