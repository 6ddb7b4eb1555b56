"""Shared parameter builders for the test suite."""

import pytest

from chircav import ModelParams, link_detunings

# Reference configuration used throughout: equal molecular decays of
# 0.1 MHz, cavity decay 1 MHz, single-molecule coupling 0.1 MHz, 1e6
# molecules (collective coupling 100 MHz), weak 5 kHz loop drive.
BASELINE_MHZ = dict(
    g_a=0.1,
    omega_31=0.005,
    omega_32=0.5,
    kappa_a=1.0,
    gamma_21=0.1,
    gamma_31=0.1,
    gamma_32=0.1,
    delta_32=100.0,
    n_left=1e6,
    n_right=0.0,
)


def baseline(**overrides) -> ModelParams:
    """Reference ModelParams with optional MHz-convention overrides."""
    return ModelParams.from_mhz(**{**BASELINE_MHZ, **overrides})


def baseline_tied(**overrides) -> ModelParams:
    """Reference params with the resonance convention applied."""
    return link_detunings(baseline(**overrides))


@pytest.fixture
def params():
    return baseline()


@pytest.fixture
def params_tied():
    return baseline_tied()
