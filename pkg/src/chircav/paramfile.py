"""Flat key-value parameter files.

Schema: one `key = value` pair per line (TOML-compatible flat document,
`#` comments allowed).  Frequency entries are named `<field>_mhz` and hold
the frequency/2pi in MHz; populations are raw counts; the loop phase is
`phi_rad` in radians.

    delta_a_mhz   = -100.0      # cavity detuning
    delta_31_mhz  = 0.0
    delta_32_mhz  = 100.0
    g_a_mhz       = 0.1         # single-molecule cavity coupling
    omega_31_mhz  = 0.005
    omega_32_mhz  = 0.5
    kappa_a_mhz   = 1.0
    gamma_21_mhz  = 0.1
    gamma_31_mhz  = 0.1
    gamma_32_mhz  = 0.1
    n_left        = 1e6
    n_right       = 0.0
    phi_rad       = 0.0

Detunings and phi default to 0 when absent; everything else is required.
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import ConfigError, InvalidParams
from .params import ModelParams, validate

_OPTIONAL = {"delta_a_mhz": 0.0, "delta_31_mhz": 0.0, "delta_32_mhz": 0.0, "phi_rad": 0.0}
_REQUIRED = (
    "g_a_mhz",
    "omega_31_mhz",
    "omega_32_mhz",
    "kappa_a_mhz",
    "gamma_21_mhz",
    "gamma_31_mhz",
    "gamma_32_mhz",
    "n_left",
    "n_right",
)
_ALL_KEYS = set(_REQUIRED) | set(_OPTIONAL)


def load_params(path) -> ModelParams:
    """Parse and validate a parameter file; raises ConfigError on any defect."""
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read parameter file {path!r}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse parameter file {path!r}: {exc}") from exc

    unknown = set(doc) - _ALL_KEYS
    if unknown:
        raise ConfigError(f"unknown keys in {path!r}: {sorted(unknown)}")
    missing = [k for k in _REQUIRED if k not in doc]
    if missing:
        raise ConfigError(f"missing keys in {path!r}: {missing}")
    values = {**_OPTIONAL, **doc}
    for key, v in values.items():
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ConfigError(f"key {key!r} must be a number, got {v!r}")

    try:
        params = ModelParams.from_mhz(
            delta_a=values["delta_a_mhz"],
            delta_31=values["delta_31_mhz"],
            delta_32=values["delta_32_mhz"],
            g_a=values["g_a_mhz"],
            omega_31=values["omega_31_mhz"],
            omega_32=values["omega_32_mhz"],
            kappa_a=values["kappa_a_mhz"],
            gamma_21=values["gamma_21_mhz"],
            gamma_31=values["gamma_31_mhz"],
            gamma_32=values["gamma_32_mhz"],
            n_left=float(values["n_left"]),
            n_right=float(values["n_right"]),
            phi=float(values["phi_rad"]),
        )
        return validate(params)
    except InvalidParams as exc:
        raise ConfigError(f"invalid parameters in {path!r}: {exc}") from exc
