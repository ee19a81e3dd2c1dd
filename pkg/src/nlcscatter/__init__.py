"""Nonlinear wave-mode coupling: scattering from a self-oscillating cavity mode.

Subpackages follow the processing chain: ``model`` builds the port-coupling
vector from the target/background matrices, ``forced_response`` solves the
synchronized steady state under single-port forcing, ``scattering``
assembles the amplitude-dependent S-matrix and absorption coefficients,
``timedomain`` cross-validates by direct integration of the modal dynamics,
``sweep`` evaluates grids with branch continuation, and ``cli`` exposes the
command-line workflow.
"""

__version__ = "0.1.0"

from . import errors
from .forced_response import ForcedResponse, ForcingPoint, forced_response
from .model import Coupling, ModelParams, background_matrix, build_coupling, validate_conditions
from .scattering import (
    ScatteringResult,
    absorption,
    limit_cycle_amplitude,
    scattering_from_signals,
    scattering_matrix,
)
from .sweep import GridSpec, SweepGrid, run_sweep, superradiance_contour
from .timedomain import SimConfig, SimResult, demodulate, simulate_forced, simulate_free

__all__ = [
    "__version__",
    "errors",
    "ModelParams",
    "Coupling",
    "build_coupling",
    "background_matrix",
    "validate_conditions",
    "ForcingPoint",
    "ForcedResponse",
    "forced_response",
    "ScatteringResult",
    "scattering_matrix",
    "scattering_from_signals",
    "absorption",
    "limit_cycle_amplitude",
    "SimConfig",
    "SimResult",
    "simulate_free",
    "simulate_forced",
    "demodulate",
    "GridSpec",
    "SweepGrid",
    "run_sweep",
    "superradiance_contour",
]
