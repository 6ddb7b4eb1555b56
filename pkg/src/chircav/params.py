"""Model parameters and mean-field state containers.

The model: an ensemble of N_L left-handed and N_R right-handed cyclic
three-level molecules collectively coupled to one cavity mode.  Per
chirality the loop |1>-|2>-|3> is closed by the cavity coupling g_a on
1<->2 and two classical drives Omega_31, Omega_32; the loop phase is
phi for the left species and phi + pi for the right one.  That pi offset
is structural and is applied inside equation assembly, never stored.

All types are immutable values; safe to copy and share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InvalidParams
from .units import AngularFrequency


@dataclass(frozen=True, slots=True)
class ModelParams:
    """All couplings, detunings, decay rates, populations and the loop phase.

    Frequencies are angular (rad/us).  delta_a is the cavity detuning in
    the rotating frame, delta_31/delta_32 the drive detunings.  g_a,
    omega_31, omega_32 are real couplings; kappa_a the cavity output
    decay; gamma_jk the molecular population decay rates.  n_left/n_right
    are real-valued so enantiomeric-excess sweeps are continuous.
    """

    delta_a: AngularFrequency
    delta_31: AngularFrequency
    delta_32: AngularFrequency
    g_a: AngularFrequency
    omega_31: AngularFrequency
    omega_32: AngularFrequency
    kappa_a: AngularFrequency
    gamma_21: AngularFrequency
    gamma_31: AngularFrequency
    gamma_32: AngularFrequency
    n_left: float
    n_right: float
    phi: float = 0.0

    @classmethod
    def from_mhz(
        cls,
        *,
        delta_a: float = 0.0,
        delta_31: float = 0.0,
        delta_32: float = 0.0,
        g_a: float,
        omega_31: float,
        omega_32: float,
        kappa_a: float,
        gamma_21: float,
        gamma_31: float,
        gamma_32: float,
        n_left: float,
        n_right: float,
        phi: float = 0.0,
    ) -> "ModelParams":
        """Build from boundary-convention numbers (each frequency/2pi in MHz)."""
        mk = AngularFrequency.from_mhz
        return cls(
            delta_a=mk(delta_a),
            delta_31=mk(delta_31),
            delta_32=mk(delta_32),
            g_a=mk(g_a),
            omega_31=mk(omega_31),
            omega_32=mk(omega_32),
            kappa_a=mk(kappa_a),
            gamma_21=mk(gamma_21),
            gamma_31=mk(gamma_31),
            gamma_32=mk(gamma_32),
            n_left=n_left,
            n_right=n_right,
            phi=phi,
        )

    @property
    def n_total(self) -> float:
        return self.n_left + self.n_right

    @property
    def eta(self) -> float:
        """Enantiomeric excess (N_L - N_R) / (N_L + N_R)."""
        return (self.n_left - self.n_right) / self.n_total

    @property
    def collective_coupling(self) -> float:
        """g_a * sqrt(N), the ensemble-enhanced cavity coupling (rad/us)."""
        return self.g_a.value * math.sqrt(self.n_total)

    def with_eta(self, eta: float) -> "ModelParams":
        """Populations re-split to the given excess at fixed total N."""
        n = self.n_total
        return replace(self, n_left=0.5 * n * (1.0 + eta), n_right=0.5 * n * (1.0 - eta))


def validate(params: ModelParams) -> ModelParams:
    """Return params unchanged if all invariants hold, else raise InvalidParams."""
    for name in ("n_left", "n_right", "phi"):
        v = getattr(params, name)
        if not math.isfinite(v):
            raise InvalidParams(name, f"not finite: {v!r}")
    if params.n_left < 0.0:
        raise InvalidParams("n_left", "must be >= 0")
    if params.n_right < 0.0:
        raise InvalidParams("n_right", "must be >= 0")
    if params.n_total <= 0.0:
        raise InvalidParams("n_left+n_right", "ensemble is empty")
    if params.kappa_a.value <= 0.0:
        raise InvalidParams("kappa_a", "cavity decay must be > 0")
    for name in ("gamma_21", "gamma_31", "gamma_32"):
        if getattr(params, name).value < 0.0:
            raise InvalidParams(name, "decay rate must be >= 0")
    return params


def link_detunings(params: ModelParams) -> ModelParams:
    """Apply the resonance convention delta_31 = 0, delta_a = -delta_32.

    This keeps the cavity and the 3<->1 drive on resonance while delta_32
    is scanned; it is the convention behind every reference curve.
    """
    return replace(
        params,
        delta_31=AngularFrequency(0.0),
        delta_a=AngularFrequency(-params.delta_32.value),
    )


@dataclass(frozen=True, slots=True)
class SpeciesMoments:
    """Collective first moments for one chirality.

    s12, s13, s23 are the stored coherences <S_12>, <S_13>, <S_23>; the
    conjugate partners <S_21> etc. are never stored, they are taken as
    complex conjugates wherever the equations reference them.  At a
    physical state s11 + s22 + s33 equals that species' molecule number.
    """

    s12: complex
    s13: complex
    s23: complex
    s11: float
    s22: float
    s33: float

    def __post_init__(self):
        for name in ("s11", "s22", "s33"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParams(name, "population not finite")

    @property
    def n_molecules(self) -> float:
        """Total molecule number of this species, s11 + s22 + s33."""
        return self.s11 + self.s22 + self.s33

    @classmethod
    def ground(cls, n: float) -> "SpeciesMoments":
        """All n molecules in |1>, no coherences."""
        return cls(s12=0j, s13=0j, s23=0j, s11=n, s22=0.0, s33=0.0)


@dataclass(frozen=True, slots=True)
class MeanFieldState:
    """Cavity amplitude plus the per-chirality collective moments."""

    a: complex
    left: SpeciesMoments
    right: SpeciesMoments

    @classmethod
    def vacuum(cls, n_left: float, n_right: float) -> "MeanFieldState":
        """Empty cavity, all molecules in the ground state."""
        return cls(a=0j, left=SpeciesMoments.ground(n_left), right=SpeciesMoments.ground(n_right))

    def species(self, which: str) -> SpeciesMoments:
        if which == "left":
            return self.left
        if which == "right":
            return self.right
        raise ValueError(f"unknown chirality {which!r} (expected 'left' or 'right')")
