"""Measurable quantities of a solved state.

The cavity is undriven, so the input-output boundary condition reduces to
<a_out> = sqrt(2 kappa_a) <a>; the detected intensity is |<a_out>|^2 and
the excitation fractions quantify how far each chirality is from the
ground state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import EmptySpecies
from .params import MeanFieldState, ModelParams
from .units import TWO_PI

Chirality = Literal["left", "right"]


@dataclass(frozen=True, slots=True)
class Observables:
    """Detector-side summary of a state.

    i_out is |a_out|^2 exactly (rad/us); i_out_over_2pi_mhz the same number
    in the /2pi MHz reporting convention.  p_e_* are the excited-state
    fractions per chirality; an empty species reports 0.
    """

    a_out: complex
    i_out: float
    i_out_over_2pi_mhz: float
    p_e_left: float
    p_e_right: float


def output_amplitude(state: MeanFieldState, params: ModelParams) -> complex:
    """<a_out> = sqrt(2 kappa_a) <a> with a vacuum input field."""
    return math.sqrt(2.0 * params.kappa_a.value) * state.a


def output_intensity(state: MeanFieldState, params: ModelParams) -> float:
    """|<a_out>|^2 in rad/us."""
    return abs(output_amplitude(state, params)) ** 2


def excitation_fraction(state: MeanFieldState, which: Chirality) -> float:
    """(s22 + s33) / N_Q for the given chirality.

    N_Q is read off the state itself as s11 + s22 + s33.
    """
    sp = state.species(which)
    n_q = sp.n_molecules
    if n_q <= 0.0:
        raise EmptySpecies(f"no {which}-handed molecules in this state")
    return (sp.s22 + sp.s33) / n_q


def _p_e_or_zero(state: MeanFieldState, which: Chirality) -> float:
    try:
        return excitation_fraction(state, which)
    except EmptySpecies:
        return 0.0


def observables_from_state(state: MeanFieldState, params: ModelParams) -> Observables:
    """Bundle all detector-side quantities for one state."""
    a_out = output_amplitude(state, params)
    i_out = abs(a_out) ** 2
    return Observables(
        a_out=a_out,
        i_out=i_out,
        i_out_over_2pi_mhz=i_out / TWO_PI,
        p_e_left=_p_e_or_zero(state, "left"),
        p_e_right=_p_e_or_zero(state, "right"),
    )
