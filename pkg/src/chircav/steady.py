"""Full nonlinear steady-state solver.

The mean-field fixed-point system is solved as 18 real equations in 18
real unknowns (complex moments split into Re/Im, s33 eliminated by the
population constraint).  Newton's method with a backtracking line search
runs along a geometric continuation ladder in the 3<->1 drive strength,
starting from the exact undriven vacuum state, so the reported solution
is always the branch continuously connected to the vacuum -- the branch
an experiment starting from ground-state molecules prepares.

Internally the solver works in scaled variables (populations /N, cavity
amplitude /sqrt(N)); the scaled equations are identical in form with the
collective coupling g*sqrt(N) in place of g, and keep the Jacobian well
conditioned at N ~ 1e6.  Reported residual norms refer to these scaled
equations (rad/us).
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import replace as dc_replace

import numpy as np

from . import _core
from .errors import NoConvergence, SingularJacobian
from .params import MeanFieldState, ModelParams, validate

_MAX_BACKTRACKS = 30
_LADDER_START_FRACTION = 1e-3


@dataclass(frozen=True, slots=True)
class SolveOptions:
    """Newton/continuation knobs.

    tol_abs is the max-norm target for the scaled residual (rad/us);
    damping in (0, 1] scales the first trial Newton step, backtracking
    halves from there on residual-norm increase.
    """

    tol_abs: float = 1e-10
    max_newton_iters: int = 50
    continuation_steps: int = 20
    damping: float = 1.0

    def __post_init__(self):
        if self.continuation_steps < 1:
            raise ValueError("continuation_steps must be >= 1")
        if self.max_newton_iters < 1:
            raise ValueError("max_newton_iters must be >= 1")
        if not (0.0 < self.damping <= 1.0):
            raise ValueError("damping must lie in (0, 1]")


@dataclass(frozen=True, slots=True)
class SolveReport:
    """Solution plus convergence bookkeeping.

    residual_norm is the max-norm of the scaled residual at the returned
    state; converged implies residual_norm < tol_abs.
    """

    state: MeanFieldState
    residual_norm: float
    newton_iters_total: int
    continuation_path_length: int
    converged: bool


def residual(state: MeanFieldState, params: ModelParams) -> np.ndarray:
    """18-component steady-state residual at a physical (unscaled) state.

    Component order matches the unknown packing: Re/Im of the cavity
    equation, then per species Re/Im of the s12, s13, s23 equations and
    the two real population equations.  The stored s33 values are used as
    given.
    """
    eff = _core.effective(params, scaled=False)
    y = _core.state_to_vector(state)
    z_a = complex(y[0], y[1])

    def block(sp):
        return (sp.s12, sp.s13, sp.s23, sp.s11, sp.s22, sp.s33)

    f_a, fl, fr = _core.equations(eff, z_a, block(state.left), block(state.right))
    out = np.empty(_core.N_VARS)
    out[0], out[1] = f_a.real, f_a.imag
    for off, f in ((_core.OFF_L, fl), (_core.OFF_R, fr)):
        f12, f13, f23, f11, f22 = f
        out[off : off + 6] = (f12.real, f12.imag, f13.real, f13.imag, f23.real, f23.imag)
        out[off + 6] = f11
        out[off + 7] = f22
    return out


def jacobian(state: MeanFieldState, params: ModelParams) -> np.ndarray:
    """Exact 18x18 Jacobian of residual() in the reduced unknowns.

    Population columns carry the chain rule of the eliminated s33
    (d s33/d s11 = d s33/d s22 = -1).
    """
    eff = _core.effective(params, scaled=False)
    return _core.jacobian_matrix(eff, _core.state_to_vector(state))


def _newton(eff, y, tol, max_iters, damping):
    """Damped Newton from y; returns (y, fnorm, iters, converged)."""
    f = _core.residual_vector(eff, y)
    fnorm = float(np.max(np.abs(f)))
    iters = 0
    while fnorm >= tol:
        if iters >= max_iters:
            return y, fnorm, iters, False
        jac = _core.jacobian_matrix(eff, y)
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(f"Newton linear solve failed: {exc}") from exc
        if not np.all(np.isfinite(step)):
            raise SingularJacobian("Newton step is not finite")
        lam = damping
        for _ in range(_MAX_BACKTRACKS + 1):
            y_try = y + lam * step
            f_try = _core.residual_vector(eff, y_try)
            fnorm_try = float(np.max(np.abs(f_try)))
            if fnorm_try < fnorm:
                y, f, fnorm = y_try, f_try, fnorm_try
                break
            lam *= 0.5
        else:
            return y, fnorm, iters + 1, False
        iters += 1
    return y, fnorm, iters, True


def solve_steady(
    params: ModelParams,
    opts: SolveOptions | None = None,
    *,
    init: MeanFieldState | None = None,
) -> SolveReport:
    """Solve the nonlinear steady state on the vacuum-connected branch.

    The 3<->1 drive is ramped geometrically from ~1e-3 of its target over
    opts.continuation_steps rungs, re-solving at each rung from the
    previous solution.  An optional init state (e.g. a neighboring sweep
    point) is tried directly at full drive first; the ladder is the
    fallback, so warm starts can only accelerate, never change the branch
    tracking policy.

    Raises NoConvergence (carrying the partial report) if a rung exceeds
    max_newton_iters, and SingularJacobian if a linear solve fails.
    """
    params = validate(params)
    opts = opts or SolveOptions()
    eff = _core.effective(params, scaled=True)
    n = params.n_total
    omega_target = params.omega_31.value

    def report(y, fnorm, iters, path_len, ok):
        return SolveReport(
            state=_core.unscale_vector(y, params),
            residual_norm=fnorm,
            newton_iters_total=iters,
            continuation_path_length=path_len,
            converged=ok,
        )

    y_vac = _core.scale_state(MeanFieldState.vacuum(params.n_left, params.n_right), n)

    if omega_target == 0.0:
        # The undriven vacuum state is exact; nothing to iterate.
        fnorm = float(np.max(np.abs(_core.residual_vector(eff, y_vac))))
        return report(y_vac, fnorm, 0, 0, fnorm < opts.tol_abs)

    if init is not None:
        y0 = _core.scale_state(init, n)
        y, fnorm, iters, ok = _newton(eff, y0, opts.tol_abs, opts.max_newton_iters, opts.damping)
        if ok:
            return report(y, fnorm, iters, 1, True)

    total_iters = 0
    y = y_vac
    if opts.continuation_steps == 1:
        ladder = np.array([omega_target])  # geomspace(f, 1, 1) would stop at f
    else:
        ladder = omega_target * np.geomspace(
            _LADDER_START_FRACTION, 1.0, opts.continuation_steps
        )
    for k, omega in enumerate(ladder):
        eff_k = dc_replace(eff, omega_31=float(omega))
        y, fnorm, iters, ok = _newton(
            eff_k, y, opts.tol_abs, opts.max_newton_iters, opts.damping
        )
        total_iters += iters
        if not ok:
            raise NoConvergence(
                f"continuation rung {k + 1}/{len(ladder)} "
                f"(omega_31 = {omega:.6g} rad/us) stalled at residual {fnorm:.3e}",
                report(y, fnorm, total_iters, k + 1, False),
            )
    return report(y, fnorm, total_iters, len(ladder), True)
