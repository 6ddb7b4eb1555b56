"""Working-state transition frequencies of the cyclic three-level scheme.

The three levels are |1> = vibrational ground state with rotational 0_00,
|2> = vibrational excited state with rotational 1_11 (M = 0) and |3> =
vibrational excited state with rotational 1_10 (M = 1).  For J = 1 the
asymmetric-top energies are closed-form in the rotational constants:
E(1_01) = B + C, E(1_11) = A + C, E(1_10) = A + B.  The magnetic quantum
number only matters for selection rules, not energies; it is recorded in
the state labels below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams
from .units import AngularFrequency

# Rotational state labels |J_{Ka Kc}, M> of the working levels.
STATE_LABELS = {
    "1": "vib ground, rot 0_00, M=0",
    "2": "vib excited, rot 1_11, M=0",
    "3": "vib excited, rot 1_10, M=1",
}


@dataclass(frozen=True, slots=True)
class MoleculeSpec:
    """Rotational constants A >= B >= C > 0 and the vibrational frequency."""

    rot_a: AngularFrequency
    rot_b: AngularFrequency
    rot_c: AngularFrequency
    omega_vib: AngularFrequency

    def __post_init__(self):
        a, b, c = self.rot_a.value, self.rot_b.value, self.rot_c.value
        if not (a >= b >= c > 0.0):
            raise InvalidParams("rot_a/rot_b/rot_c", f"need A >= B >= C > 0, got {a}, {b}, {c}")

    @classmethod
    def from_mhz(cls, rot_a: float, rot_b: float, rot_c: float, omega_vib: float) -> "MoleculeSpec":
        mk = AngularFrequency.from_mhz
        return cls(rot_a=mk(rot_a), rot_b=mk(rot_b), rot_c=mk(rot_c), omega_vib=mk(omega_vib))


@dataclass(frozen=True, slots=True)
class WorkingFrequencies:
    """The three loop transition frequencies; omega_32 = omega_31 - omega_21
    bit-exactly (it is stored as that difference)."""

    omega_21: AngularFrequency
    omega_31: AngularFrequency
    omega_32: AngularFrequency


# 1,2-propanediol: the OH-stretch vibration at 100.95 THz and the
# published microwave rotational constants.
PRESETS = {
    "propanediol-1,2": MoleculeSpec.from_mhz(
        rot_a=8524.405, rot_b=3635.492, rot_c=2788.699, omega_vib=100.95e6
    ),
}


def j1_rigid_rotor_energies(
    spec: MoleculeSpec,
) -> tuple[AngularFrequency, AngularFrequency, AngularFrequency]:
    """J = 1 asymmetric-top energies (E_101, E_111, E_110), increasing for A >= B >= C."""
    a, b, c = spec.rot_a.value, spec.rot_b.value, spec.rot_c.value
    return (AngularFrequency(b + c), AngularFrequency(a + c), AngularFrequency(a + b))


def working_frequencies(spec: MoleculeSpec) -> WorkingFrequencies:
    """Loop transition frequencies from the working-state assignment.

    omega_21 = omega_vib + E(1_11), omega_31 = omega_vib + E(1_10); the
    microwave leg omega_32 closes the loop.
    """
    _, e111, e110 = j1_rigid_rotor_energies(spec)
    omega_21 = spec.omega_vib.value + e111.value
    omega_31 = spec.omega_vib.value + e110.value
    return WorkingFrequencies(
        omega_21=AngularFrequency(omega_21),
        omega_31=AngularFrequency(omega_31),
        omega_32=AngularFrequency(omega_31 - omega_21),
    )
