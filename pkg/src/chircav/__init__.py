"""chircav: cavity-output simulation and enantiomeric-excess detection
for ensembles of cyclic three-level chiral molecules.

The toolkit solves the mean-field steady state of N_L left- and N_R
right-handed molecules collectively coupled to one cavity mode, evaluates
the closed-form low-excitation predictions, integrates the time-domain
equations as an independent oracle, and inverts a measured cavity output
intensity to candidate enantiomeric-excess values.
"""

from .analytic import (
    KFactors,
    first_order_cavity_amplitude,
    k_factors,
    optimal_omega32,
    optimal_output_intensity,
    output_intensity_low_excitation,
    zeroth_order_state,
)
from .detect import EtaEstimate, calibration_curve, eta_from_intensity_full, eta_from_intensity_low
from .dynamics import Trajectory, integrate_to_steady, mean_field_rhs
from .errors import (
    ChircavError,
    ConfigError,
    DegenerateConfig,
    DegenerateDenominator,
    EmptySpecies,
    InvalidParams,
    NoConvergence,
    NoCrossing,
    OutOfRange,
    SingularJacobian,
    StiffnessFailure,
    SweepAborted,
)
from .molecule import (
    PRESETS,
    MoleculeSpec,
    WorkingFrequencies,
    j1_rigid_rotor_energies,
    working_frequencies,
)
from .observables import (
    Observables,
    excitation_fraction,
    observables_from_state,
    output_amplitude,
    output_intensity,
)
from .paramfile import load_params
from .params import (
    MeanFieldState,
    ModelParams,
    SpeciesMoments,
    link_detunings,
    validate,
)
from .steady import SolveOptions, SolveReport, jacobian, residual, solve_steady
from .sweep import AxisSpec, SweepRow, SweepTable, run_sweep
from .units import TWO_PI, AngularFrequency

__version__ = "0.1.0"

__all__ = [
    "AngularFrequency",
    "AxisSpec",
    "ChircavError",
    "ConfigError",
    "DegenerateConfig",
    "DegenerateDenominator",
    "EmptySpecies",
    "EtaEstimate",
    "InvalidParams",
    "KFactors",
    "MeanFieldState",
    "ModelParams",
    "MoleculeSpec",
    "NoConvergence",
    "NoCrossing",
    "Observables",
    "OutOfRange",
    "PRESETS",
    "SingularJacobian",
    "SolveOptions",
    "SolveReport",
    "SpeciesMoments",
    "StiffnessFailure",
    "SweepAborted",
    "SweepRow",
    "SweepTable",
    "TWO_PI",
    "Trajectory",
    "WorkingFrequencies",
    "calibration_curve",
    "eta_from_intensity_full",
    "eta_from_intensity_low",
    "excitation_fraction",
    "first_order_cavity_amplitude",
    "integrate_to_steady",
    "j1_rigid_rotor_energies",
    "jacobian",
    "k_factors",
    "link_detunings",
    "load_params",
    "mean_field_rhs",
    "observables_from_state",
    "optimal_omega32",
    "optimal_output_intensity",
    "output_amplitude",
    "output_intensity",
    "output_intensity_low_excitation",
    "residual",
    "run_sweep",
    "solve_steady",
    "validate",
    "working_frequencies",
    "zeroth_order_state",
]
