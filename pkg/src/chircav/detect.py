"""Inversion of a measured output intensity to enantiomeric excess.

Two routes:

  * low-excitation: the closed-form intensity is proportional to eta^2,
    so |eta| follows from a square root against the eta = 1 reference.
    The sign is structurally unresolvable on this route.
  * full: a calibration curve eta -> I_out is computed with the nonlinear
    solver on a uniform eta grid and the measured value is intersected
    with its piecewise-linear interpolant.  Beyond the low-excitation
    regime the curve is asymmetric in eta, which can single out the sign.

The calibration is computed, not measured: the measured intensity is an
external number, the forward model provides the inversion curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .analytic import output_intensity_low_excitation
from .errors import DegenerateConfig, NoCrossing, OutOfRange
from .observables import output_intensity
from .params import ModelParams, validate
from .steady import SolveOptions, solve_steady

Method = Literal["analytic_low_excitation", "calibrated_full"]

_ETA_SLACK = 1e-6


@dataclass(frozen=True, slots=True)
class EtaEstimate:
    """Candidate enantiomeric-excess values explaining one measurement.

    magnitude is the largest |candidate|; sign_resolved is True only when
    exactly one candidate survives.
    """

    magnitude: float
    sign_resolved: bool
    candidates: list[float]
    method: Method


def eta_from_intensity_low(i_out_measured: float, params: ModelParams) -> EtaEstimate:
    """Invert the low-excitation intensity law I(eta) = eta^2 I(1).

    The measurement configuration is described by params; its own
    populations only set the total N.  Raises DegenerateConfig when the
    eta = 1 reference intensity vanishes and OutOfRange when the implied
    |eta| exceeds 1 beyond tolerance.
    """
    if i_out_measured < 0.0:
        raise OutOfRange(f"measured intensity must be >= 0, got {i_out_measured!r}")
    params = validate(params)
    i_ref = output_intensity_low_excitation(params.with_eta(1.0))
    if i_ref <= 0.0:
        raise DegenerateConfig("reference intensity at eta = 1 is zero; nothing to invert")
    magnitude = math.sqrt(i_out_measured / i_ref)
    if magnitude > 1.0 + _ETA_SLACK:
        raise OutOfRange(
            f"measured intensity implies |eta| = {magnitude:.6g} > 1; "
            "measurement inconsistent with this configuration"
        )
    magnitude = min(magnitude, 1.0)
    candidates = [0.0] if magnitude == 0.0 else [-magnitude, magnitude]
    return EtaEstimate(
        magnitude=magnitude,
        sign_resolved=False,
        candidates=candidates,
        method="analytic_low_excitation",
    )


def calibration_curve(
    params: ModelParams,
    grid_points: int,
    opts: SolveOptions | None = None,
) -> tuple[list[float], list[float]]:
    """Full-solver intensity on a uniform eta grid over [-1, 1].

    Consecutive points warm-start from their neighbor, so the whole curve
    stays on the vacuum-connected branch.
    """
    if grid_points < 3:
        raise ValueError("grid_points must be >= 3")
    params = validate(params)
    etas = [-1.0 + 2.0 * k / (grid_points - 1) for k in range(grid_points)]
    intensities = []
    prev_state = None
    for eta in etas:
        p = params.with_eta(eta)
        rep = solve_steady(p, opts, init=prev_state)
        prev_state = rep.state
        intensities.append(output_intensity(rep.state, p))
    return etas, intensities


def eta_from_intensity_full(
    i_out_measured: float,
    params: ModelParams,
    grid_points: int = 201,
    opts: SolveOptions | None = None,
) -> EtaEstimate:
    """Invert a measurement against the computed calibration curve.

    Every crossing of the piecewise-linear interpolated curve with the
    measured intensity becomes a candidate; the sign is resolved when the
    crossing is unique.  A measured value above the calibration maximum
    (beyond 1e-6 relative slack) raises NoCrossing; one below the minimum
    returns the curve's argmin as the single nearest candidate.
    """
    if i_out_measured < 0.0:
        raise OutOfRange(f"measured intensity must be >= 0, got {i_out_measured!r}")
    etas, curve = calibration_curve(params, grid_points, opts)
    i_max = max(curve)
    if i_out_measured > i_max:
        if i_out_measured - i_max > _ETA_SLACK * max(i_max, 1e-300):
            raise NoCrossing(
                f"measured intensity {i_out_measured:.6g} exceeds calibration "
                f"maximum {i_max:.6g}"
            )
        i_out_measured = i_max

    candidates: list[float] = []

    def add(eta):
        for c in candidates:
            if abs(c - eta) < 1e-12:
                return
        candidates.append(eta)

    for k in range(len(etas) - 1):
        lo, hi = curve[k], curve[k + 1]
        d_lo, d_hi = lo - i_out_measured, hi - i_out_measured
        if d_lo == 0.0:
            add(etas[k])
        if d_hi == 0.0:
            add(etas[k + 1])
        elif d_lo * d_hi < 0.0:
            frac = d_lo / (lo - hi)
            add(etas[k] + frac * (etas[k + 1] - etas[k]))

    if not candidates and i_out_measured <= min(curve):
        add(etas[curve.index(min(curve))])

    candidates.sort()
    return EtaEstimate(
        magnitude=max((abs(c) for c in candidates), default=0.0),
        sign_resolved=len(candidates) == 1,
        candidates=candidates,
        method="calibrated_full",
    )
