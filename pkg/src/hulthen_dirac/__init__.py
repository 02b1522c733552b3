"""Exact transmission of a Dirac particle through the 1D Hulthen barrier."""

from .analytic import (
    Kinematics,
    MatchedAmplitudes,
    ScatteringCoefficients,
    SolutionAtOrigin,
    coefficients,
    kinematics,
    left_solution_at_origin,
    match,
    right_solution_at_origin,
    solve,
    spinor_components,
    transmission,
)
from .errors import HulthenError
from .oracle import IntegrationConfig, integrate_spinor, oracle_transmission
from .potential import PotentialParams, barrier_height, derivative, evaluate
from .special_fn import gauss_2f1, gauss_2f1_derivative, log_gamma_complex
from .sweeps import (
    PRESETS,
    ResonancePeak,
    SweepSpec,
    SweepTable,
    find_resonances,
    preset,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "HulthenError",
    "IntegrationConfig",
    "Kinematics",
    "MatchedAmplitudes",
    "PRESETS",
    "PotentialParams",
    "ResonancePeak",
    "ScatteringCoefficients",
    "SolutionAtOrigin",
    "SweepSpec",
    "SweepTable",
    "barrier_height",
    "coefficients",
    "derivative",
    "evaluate",
    "find_resonances",
    "gauss_2f1",
    "gauss_2f1_derivative",
    "integrate_spinor",
    "kinematics",
    "left_solution_at_origin",
    "log_gamma_complex",
    "match",
    "oracle_transmission",
    "preset",
    "right_solution_at_origin",
    "run_sweep",
    "solve",
    "spinor_components",
    "transmission",
]
