"""Time-domain integration of the mean-field equations of motion.

The equations integrated here are the same expressions whose roots the
steady solver finds, so a trajectory settling from the vacuum state is an
independent route to the same fixed point and serves as the solver's
oracle.  Noise operators have zero mean and are dropped; s33 evolves by
population conservation (ds33 = -ds11 - ds22), which keeps the constraint
exact up to roundoff regardless of integrator error.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import _core
from .errors import StiffnessFailure
from .params import MeanFieldState, ModelParams, SpeciesMoments, validate

_RTOL = 1e-10
_ATOL = 1e-13
_SAMPLES_PER_WINDOW = 8

_CSV_COLUMNS = (
    "t_us",
    "re_a",
    "im_a",
    "re_s12_left",
    "im_s12_left",
    "re_s13_left",
    "im_s13_left",
    "re_s23_left",
    "im_s23_left",
    "s11_left",
    "s22_left",
    "re_s12_right",
    "im_s12_right",
    "re_s13_right",
    "im_s13_right",
    "re_s23_right",
    "im_s23_right",
    "s11_right",
    "s22_right",
)


@dataclass(frozen=True, slots=True)
class Trajectory:
    """Sampled time evolution; converged_at marks the start of the first
    window over which the settle criterion held (None if never)."""

    times: list[float]
    states: list[MeanFieldState]
    converged_at: float | None

    def write_csv(self, path) -> None:
        """One row per sample: time plus the 16 species moments.

        s33 per species is not a column; it follows from
        s33 = N_Q - s11 - s22.
        """
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(_CSV_COLUMNS)
            for t, st in zip(self.times, self.states):
                row = [t]
                row += [st.a.real, st.a.imag]
                for sp in (st.left, st.right):
                    row += [
                        sp.s12.real,
                        sp.s12.imag,
                        sp.s13.real,
                        sp.s13.imag,
                        sp.s23.real,
                        sp.s23.imag,
                        sp.s11,
                        sp.s22,
                    ]
                writer.writerow(f"{v:.17g}" for v in row)


def mean_field_rhs(state: MeanFieldState, params: ModelParams) -> MeanFieldState:
    """Time derivative of every stored moment at the given state.

    Returned as a MeanFieldState-shaped container (a tangent, not a
    physical state): populations of the derivative sum to zero per
    species, with ds33 = -(ds11 + ds22) by conservation.
    """
    eff = _core.effective(params, scaled=False)

    def block(sp):
        return (sp.s12, sp.s13, sp.s23, sp.s11, sp.s22, sp.s33)

    f_a, fl, fr = _core.equations(eff, state.a, block(state.left), block(state.right))

    def moments(f):
        f12, f13, f23, f11, f22 = f
        return SpeciesMoments(s12=f12, s13=f13, s23=f23, s11=f11, s22=f22, s33=-(f11 + f22))

    return MeanFieldState(a=f_a, left=moments(fl), right=moments(fr))


def integrate_to_steady(
    params: ModelParams,
    init: MeanFieldState,
    t_max: float,
    settle_tol: float = 1e-8,
) -> Trajectory:
    """Integrate from init until the motion stops or t_max is reached.

    Adaptive embedded Runge-Kutta (DOP853, relative step tolerance 1e-10)
    on the scaled variables.  Convergence is declared once
    max|rhs| / max(max|state|, 1) stays below settle_tol over a trailing
    window of 10/kappa_a; converged_at records where that window started.
    Near a fixed point the sampled ratio bottoms out at the integrator's
    own noise (~1e-9 here), so settle_tol below ~1e-8 may never trigger
    even though the trajectory has fully converged.

    Raises StiffnessFailure if the integrator's step size underflows.
    """
    if t_max <= 0.0:
        raise ValueError("t_max must be > 0")
    params = validate(params)
    eff = _core.effective(params, scaled=True)
    n = params.n_total
    window = 10.0 / params.kappa_a.value

    def rhs(_t, y):
        return _core.residual_vector(eff, y)

    def settled(y) -> bool:
        r = float(np.max(np.abs(_core.residual_vector(eff, y))))
        return r / max(float(np.max(np.abs(y))), 1.0) < settle_tol

    y = _core.scale_state(init, n)
    times: list[float] = [0.0]
    samples: list[np.ndarray] = [y.copy()]

    t = 0.0
    streak_start: float | None = 0.0 if settled(y) else None
    converged_at: float | None = None
    while t < t_max and converged_at is None:
        t_end = min(t + window, t_max)
        t_eval = np.linspace(t, t_end, _SAMPLES_PER_WINDOW + 1)[1:]
        sol = solve_ivp(
            rhs,
            (t, t_end),
            y,
            method="DOP853",
            rtol=_RTOL,
            atol=_ATOL,
            t_eval=t_eval,
            dense_output=False,
        )
        if not sol.success:
            raise StiffnessFailure(
                f"integrator failed at t = {sol.t[-1] if len(sol.t) else t:.6g} us: "
                f"{sol.message}",
                time=float(sol.t[-1]) if len(sol.t) else t,
                state=_core.unscale_vector(sol.y[:, -1], params) if sol.y.size else None,
            )
        for k in range(sol.y.shape[1]):
            yk = sol.y[:, k]
            tk = float(sol.t[k])
            times.append(tk)
            samples.append(yk.copy())
            if settled(yk):
                if streak_start is None:
                    streak_start = tk
                if tk - streak_start >= window:
                    converged_at = streak_start
                    break
            else:
                streak_start = None
        y = sol.y[:, -1] if converged_at is None else samples[-1]
        t = t_end

    states = [_core.unscale_vector(s, params) for s in samples]
    return Trajectory(times=times, states=states, converged_at=converged_at)
