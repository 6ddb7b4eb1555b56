"""Unit convention: angular frequencies in rad/us internally.

Every frequency-like quantity quoted at the I/O boundary (parameter files,
CLI, CSV headers) is "value/2pi in MHz"; conversion happens here and only
here.  1 MHz of "frequency/2pi" corresponds to 2pi rad/us internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParams

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class AngularFrequency:
    """An angular frequency in rad/us. Finite by construction."""

    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise InvalidParams("angular_frequency", f"not finite: {self.value!r}")

    @classmethod
    def from_mhz(cls, freq_over_2pi_mhz: float) -> "AngularFrequency":
        """Build from a 'frequency/2pi in MHz' number (the boundary convention)."""
        return cls(TWO_PI * freq_over_2pi_mhz)

    def to_mhz(self) -> float:
        """Back to 'frequency/2pi in MHz'; inverse of from_mhz to 1 ulp."""
        return self.value / TWO_PI

    def __float__(self) -> float:
        return self.value
