"""Closed-form low-excitation predictions.

With a weak 3<->1 drive almost all molecules stay in the ground state and
the cavity amplitude is linear in the population imbalance N_L - N_R.
This module carries the vacuum reference state, the first-order cavity
amplitude, the resulting output intensity, and the peak intensity at the
collective-coupling resonance delta_32 = g*sqrt(N) together with the
drive strength that maximizes it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateDenominator
from .params import MeanFieldState, ModelParams
from .units import AngularFrequency

# Far below any physical magnitude; only exact pathological inputs trip it.
_DENOM_EPS = 1e-30


@dataclass(frozen=True, slots=True)
class KFactors:
    """Complex response denominator factors of the linearized system.

    k_a  = i*delta_a + kappa_a           (cavity)
    k_21 = i*(delta_31 - delta_32) + gamma_21       (1<->2 coherence)
    k_31 = i*delta_31 + gamma_31 + gamma_32         (1<->3 coherence)
    """

    k_a: complex
    k_21: complex
    k_31: complex


def k_factors(params: ModelParams) -> KFactors:
    return KFactors(
        k_a=1j * params.delta_a.value + params.kappa_a.value,
        k_21=1j * (params.delta_31.value - params.delta_32.value) + params.gamma_21.value,
        k_31=1j * params.delta_31.value + params.gamma_31.value + params.gamma_32.value,
    )


def zeroth_order_state(params: ModelParams) -> MeanFieldState:
    """Vacuum cavity, every molecule in |1>.

    This is an exact steady state whenever omega_31 = 0 and the reference
    point of the perturbation expansion otherwise.
    """
    return MeanFieldState.vacuum(params.n_left, params.n_right)


def _denominator(params: ModelParams) -> complex:
    k = k_factors(params)
    g = params.g_a.value
    d = k.k_a * (k.k_21 * k.k_31 + params.omega_32.value**2) + g * g * params.n_total * k.k_31
    if abs(d) < _DENOM_EPS:
        raise DegenerateDenominator(
            f"response denominator |{d!r}| below {_DENOM_EPS:g}; "
            "all decays zero at exact resonance"
        )
    return d


def first_order_cavity_amplitude(params: ModelParams) -> complex:
    """<a> to first order in the 3<->1 drive.

    i (N_L - N_R) g_a O31 O32 e^{-i phi} / [K_a (K21 K31 + O32^2) + g_a^2 N K31]
    """
    num = (
        1j
        * (params.n_left - params.n_right)
        * params.g_a.value
        * params.omega_31.value
        * params.omega_32.value
        * cmath.exp(-1j * params.phi)
    )
    return num / _denominator(params)


def output_intensity_low_excitation(params: ModelParams) -> float:
    """Output intensity |sqrt(2 kappa_a) <a>^(1)|^2 in rad/us.

    Proportional to eta^2 and independent of the loop phase phi (which
    only enters through a unit-modulus factor).  Report as value/2pi for
    the MHz convention.
    """
    num = (
        params.n_total
        * math.sqrt(2.0 * params.kappa_a.value)
        * params.g_a.value
        * params.omega_31.value
        * params.omega_32.value
        * params.eta
    )
    return abs(num / _denominator(params)) ** 2


def optimal_output_intensity(params: ModelParams) -> float:
    """Peak output intensity at delta_32 = g*sqrt(N), strong collective coupling.

    2 N kappa_a O31^2 O32^2 eta^2 / [(G31+G32)(G21+kappa_a) + O32^2]^2

    Evaluated as written regardless of the caller's regime so it can
    cross-check the full delta_32-dependent expression in tests.
    """
    o32sq = params.omega_32.value**2
    bracket = (params.gamma_31.value + params.gamma_32.value) * (
        params.gamma_21.value + params.kappa_a.value
    ) + o32sq
    if abs(bracket) < _DENOM_EPS:
        raise DegenerateDenominator("peak-intensity denominator bracket is zero")
    num = (
        2.0
        * params.n_total
        * params.kappa_a.value
        * params.omega_31.value**2
        * o32sq
        * params.eta**2
    )
    return num / bracket**2


def optimal_omega32(params: ModelParams) -> AngularFrequency:
    """The 3<->2 drive strength maximizing the peak intensity.

    Stationary point of the peak-intensity expression in omega_32:
    omega_32* = sqrt((gamma_31 + gamma_32) * (gamma_21 + kappa_a)).
    """
    return AngularFrequency(
        math.sqrt(
            (params.gamma_31.value + params.gamma_32.value)
            * (params.gamma_21.value + params.kappa_a.value)
        )
    )
