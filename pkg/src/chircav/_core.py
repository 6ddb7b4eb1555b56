"""Shared evaluation core for the coupled cavity-ensemble mean-field equations.

The steady-state residual, the Newton Jacobian and the time-domain
right-hand side all evaluate the same six complex/real expressions per
species; they are defined once here so the root finder and the integrator
cannot drift apart.

Packing of the 18 real degrees of freedom:

    y[0:2]    Re<a>, Im<a>
    y[2:10]   left species:  Re/Im s12, Re/Im s13, Re/Im s23, s11, s22
    y[10:18]  right species: same layout

s33 is not an unknown; it is fixed by the population constraint
s11 + s22 + s33 = N_Q, so the system is square (18 equations, 18 unknowns).

The same equations serve two parameterizations:

  * unscaled: coupling = g_a, populations N_L, N_R (public residual/Jacobian,
    time derivatives of physical moments);
  * scaled:   coupling = g_a*sqrt(N), population fractions x_Q = N_Q/N,
    cavity amplitude alpha = <a>/sqrt(N), moments sigma = <S>/N.  The
    substitution maps the equations onto themselves exactly and keeps the
    Jacobian well conditioned at N ~ 1e6.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .params import MeanFieldState, ModelParams, SpeciesMoments

N_VARS = 18
OFF_L = 2
OFF_R = 10


@dataclass(frozen=True, slots=True)
class EffectiveParams:
    """Plain-float view of ModelParams consumed by the hot loops.

    phase_left/phase_right are e^{i phi_Q}; the pi offset between the
    chiralities is baked in here (phase_right = -phase_left).
    """

    delta_a: float
    delta_31: float
    delta_32: float
    coupling: float
    omega_31: float
    omega_32: float
    kappa_a: float
    gamma_21: float
    gamma_31: float
    gamma_32: float
    n_left: float
    n_right: float
    phase_left: complex
    phase_right: complex


def effective(params: ModelParams, *, scaled: bool) -> EffectiveParams:
    """Build the hot-loop view; scaled=True normalizes by the ensemble size."""
    n = params.n_total
    phase = cmath.exp(1j * params.phi)
    if scaled:
        coupling = params.g_a.value * math.sqrt(n)
        n_left, n_right = params.n_left / n, params.n_right / n
    else:
        coupling = params.g_a.value
        n_left, n_right = params.n_left, params.n_right
    return EffectiveParams(
        delta_a=params.delta_a.value,
        delta_31=params.delta_31.value,
        delta_32=params.delta_32.value,
        coupling=coupling,
        omega_31=params.omega_31.value,
        omega_32=params.omega_32.value,
        kappa_a=params.kappa_a.value,
        gamma_21=params.gamma_21.value,
        gamma_31=params.gamma_31.value,
        gamma_32=params.gamma_32.value,
        n_left=n_left,
        n_right=n_right,
        phase_left=phase,
        phase_right=-phase,
    )


def _species_terms(eff, phase, z_a, z12, z13, z23, p1, p2, p3):
    """The five per-species expressions (three complex, two real).

    These are simultaneously the time derivatives of (s12, s13, s23, s11,
    s22) and, set to zero, the steady-state equations.  Conjugate moments
    enter as conjugates of the stored ones.
    """
    g = eff.coupling
    o31 = eff.omega_31
    o32 = eff.omega_32
    pc = phase.conjugate()

    f12 = (
        -(1j * (eff.delta_31 - eff.delta_32) + eff.gamma_21) * z12
        + 1j * g * z_a * (p2 - p1)
        + 1j * o31 * z23.conjugate()
        - 1j * o32 * pc * z13
    )
    f13 = (
        -(1j * eff.delta_31 + eff.gamma_31 + eff.gamma_32) * z13
        + 1j * o31 * (p3 - p1)
        + 1j * g * z_a * z23
        - 1j * o32 * phase * z12
    )
    f23 = (
        -(1j * eff.delta_32 + eff.gamma_21 + eff.gamma_31 + eff.gamma_32) * z23
        + 1j * o32 * phase * (p3 - p2)
        - 1j * o31 * z12.conjugate()
        + 1j * g * z_a.conjugate() * z13
    )
    # i g (a s21 - a+ s12) = -2 g Im(a conj(s12)); i O31 (s31 - s13) = 2 O31 Im(s13)
    w = (z_a * z12.conjugate()).imag
    f11 = -2.0 * g * w + 2.0 * o31 * z13.imag + 2.0 * eff.gamma_21 * p2 + 2.0 * eff.gamma_31 * p3
    f22 = (
        2.0 * g * w
        + 2.0 * o32 * (pc * z23).imag
        - 2.0 * eff.gamma_21 * p2
        + 2.0 * eff.gamma_32 * p3
    )
    return f12, f13, f23, f11, f22


def equations(eff: EffectiveParams, z_a, left, right):
    """Evaluate the full equation set from explicit moment values.

    left/right are tuples (z12, z13, z23, p1, p2, p3); p3 is taken as
    given so callers control whether it comes from storage or from the
    population constraint.  Returns (f_a, left_terms, right_terms).
    """
    f_a = (
        -(1j * eff.delta_a + eff.kappa_a) * z_a
        - 1j * eff.coupling * (left[0] + right[0])
    )
    fl = _species_terms(eff, eff.phase_left, z_a, *left)
    fr = _species_terms(eff, eff.phase_right, z_a, *right)
    return f_a, fl, fr


def _unpack_block(y, off, n_q):
    z12 = complex(y[off], y[off + 1])
    z13 = complex(y[off + 2], y[off + 3])
    z23 = complex(y[off + 4], y[off + 5])
    p1 = y[off + 6]
    p2 = y[off + 7]
    return z12, z13, z23, p1, p2, n_q - p1 - p2


def residual_vector(eff: EffectiveParams, y) -> np.ndarray:
    """18-component residual of the steady-state equations at packed y."""
    z_a = complex(y[0], y[1])
    left = _unpack_block(y, OFF_L, eff.n_left)
    right = _unpack_block(y, OFF_R, eff.n_right)
    f_a, fl, fr = equations(eff, z_a, left, right)
    out = np.empty(N_VARS)
    out[0], out[1] = f_a.real, f_a.imag
    for off, f in ((OFF_L, fl), (OFF_R, fr)):
        f12, f13, f23, f11, f22 = f
        out[off] = f12.real
        out[off + 1] = f12.imag
        out[off + 2] = f13.real
        out[off + 3] = f13.imag
        out[off + 4] = f23.real
        out[off + 5] = f23.imag
        out[off + 6] = f11
        out[off + 7] = f22
    return out


def _put_zz(J, row, col, c, d=0j):
    """Complex equation rows (row, row+1) gaining c*z + d*conj(z)."""
    s, t = c + d, c - d
    J[row, col] += s.real
    J[row + 1, col] += s.imag
    J[row, col + 1] += -t.imag
    J[row + 1, col + 1] += t.real


def _put_zp(J, row, col, c):
    """Complex equation rows gaining c*p for a real variable p."""
    J[row, col] += c.real
    J[row + 1, col] += c.imag


def _put_rz(J, row, col, a):
    """Real equation row gaining Im(a*z)."""
    J[row, col] += a.imag
    J[row, col + 1] += a.real


def jacobian_matrix(eff: EffectiveParams, y) -> np.ndarray:
    """Exact analytic Jacobian d(residual)/dy at packed y.

    The only state dependence is through the bilinear coupling terms
    g<a><S>; everything else is constant in y.  Derivatives with respect
    to the populations include the chain rule of the eliminated variable,
    d s33 / d s11 = d s33 / d s22 = -1.
    """
    J = np.zeros((N_VARS, N_VARS))
    z_a = complex(y[0], y[1])
    g = eff.coupling
    o31 = eff.omega_31
    o32 = eff.omega_32

    c_a = -(1j * eff.delta_a + eff.kappa_a)
    c12 = -(1j * (eff.delta_31 - eff.delta_32) + eff.gamma_21)
    c13 = -(1j * eff.delta_31 + eff.gamma_31 + eff.gamma_32)
    c23 = -(1j * eff.delta_32 + eff.gamma_21 + eff.gamma_31 + eff.gamma_32)

    _put_zz(J, 0, 0, c_a)
    for off, phase in ((OFF_L, eff.phase_left), (OFF_R, eff.phase_right)):
        z12, z13, z23, p1, p2, _ = _unpack_block(y, off, 0.0)
        pc = phase.conjugate()
        i12, i13, i23, i11, i22 = off, off + 2, off + 4, off + 6, off + 7

        _put_zz(J, 0, i12, -1j * g)

        _put_zz(J, i12, i12, c12)
        _put_zz(J, i12, 0, 1j * g * (p2 - p1))
        _put_zz(J, i12, i13, -1j * o32 * pc)
        _put_zz(J, i12, i23, 0j, d=1j * o31)
        _put_zp(J, i12, i11, -1j * g * z_a)
        _put_zp(J, i12, i22, 1j * g * z_a)

        _put_zz(J, i13, i13, c13)
        _put_zz(J, i13, i12, -1j * o32 * phase)
        _put_zz(J, i13, i23, 1j * g * z_a)
        _put_zz(J, i13, 0, 1j * g * z23)
        _put_zp(J, i13, i11, -2j * o31)
        _put_zp(J, i13, i22, -1j * o31)

        _put_zz(J, i23, i23, c23)
        _put_zz(J, i23, i13, 1j * g * z_a.conjugate())
        _put_zz(J, i23, i12, 0j, d=-1j * o31)
        _put_zz(J, i23, 0, 0j, d=1j * g * z13)
        _put_zp(J, i23, i11, -1j * o32 * phase)
        _put_zp(J, i23, i22, -2j * o32 * phase)

        _put_rz(J, i11, 0, -2.0 * g * z12.conjugate())
        _put_rz(J, i11, i12, 2.0 * g * z_a.conjugate())
        _put_rz(J, i11, i13, complex(2.0 * o31))
        J[i11, i11] += -2.0 * eff.gamma_31
        J[i11, i22] += 2.0 * eff.gamma_21 - 2.0 * eff.gamma_31

        _put_rz(J, i22, 0, 2.0 * g * z12.conjugate())
        _put_rz(J, i22, i12, -2.0 * g * z_a.conjugate())
        _put_rz(J, i22, i23, 2.0 * o32 * pc)
        J[i22, i11] += -2.0 * eff.gamma_32
        J[i22, i22] += -2.0 * eff.gamma_21 - 2.0 * eff.gamma_32
    return J


def state_to_vector(state: MeanFieldState) -> np.ndarray:
    """Pack a state into the 18-vector (drops the dependent s33)."""
    y = np.empty(N_VARS)
    y[0], y[1] = state.a.real, state.a.imag
    for off, sp in ((OFF_L, state.left), (OFF_R, state.right)):
        y[off] = sp.s12.real
        y[off + 1] = sp.s12.imag
        y[off + 2] = sp.s13.real
        y[off + 3] = sp.s13.imag
        y[off + 4] = sp.s23.real
        y[off + 5] = sp.s23.imag
        y[off + 6] = sp.s11
        y[off + 7] = sp.s22
    return y


def vector_to_state(y, n_left: float, n_right: float) -> MeanFieldState:
    """Unpack a 18-vector, reconstructing s33 from the population constraint."""

    def block(off, n_q):
        z12, z13, z23, p1, p2, p3 = _unpack_block(y, off, n_q)
        return SpeciesMoments(s12=z12, s13=z13, s23=z23, s11=p1, s22=p2, s33=p3)

    return MeanFieldState(
        a=complex(y[0], y[1]),
        left=block(OFF_L, n_left),
        right=block(OFF_R, n_right),
    )


def scale_state(state: MeanFieldState, n: float) -> np.ndarray:
    """Pack and normalize: alpha = a/sqrt(N), sigma = S/N."""
    y = state_to_vector(state)
    y[0:2] /= math.sqrt(n)
    y[2:] /= n
    return y


def unscale_vector(y, params: ModelParams) -> MeanFieldState:
    """Invert scale_state back to physical moments."""
    n = params.n_total
    z = np.array(y, dtype=float, copy=True)
    z[0:2] *= math.sqrt(n)
    z[2:] *= n
    return vector_to_state(z, params.n_left, params.n_right)
