"""Amplitude-dependent 2x2 scattering matrix and absorption coefficients.

The full S-matrix splits into the frequency-dependent linear background and
a mode contribution assembled column by column from single-port forcing:

    S = (C + D F^-1 D^T)  +  (1/s) * D * sum_j rho_j e^{i phi_j} <j|

Column j of the nonlinear part therefore reflects the synchronized response
to forcing *from port j alone*.  Superposition does not hold for the
nonlinear part, so S must never be applied to simultaneous two-port inputs;
it predicts outgoing waves for single-port forcing of amplitude s.

Absorption for forcing from port j is alpha_j = 1 - |S_1j|^2 - |S_2j|^2;
alpha_j < 0 is superradiant scattering (net amplification of the incident
wave energy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoLimitCycle, ZeroInput
from .forced_response import BranchPolicy, ForcedResponse, ForcingPoint, forced_response
from .model import Coupling, ModelParams, background_matrix

__all__ = [
    "ScatteringResult",
    "limit_cycle_amplitude",
    "normalized_amplitude",
    "forcing_from_normalized",
    "scattering_matrix",
    "scattering_from_signals",
    "absorption",
]


@dataclass(frozen=True)
class ScatteringResult:
    """S-matrix at one (omega, s) point, split into linear and mode parts.

    S = S_linear + S_nonlinear exactly.  ``responses`` holds the per-port
    synchronized solutions behind the nonlinear columns (None when the mode
    contribution is suppressed).  ``warnings`` carries branch-ambiguity
    notes (multiple amplitude roots) without failing the evaluation.
    """

    S_linear: np.ndarray
    S_nonlinear: np.ndarray
    S: np.ndarray
    alpha: tuple[float, float]
    superradiant: tuple[bool, bool]
    s_tilde: float
    responses: tuple[ForcedResponse, ForcedResponse] | None
    warnings: tuple[str, ...]


def limit_cycle_amplitude(p: ModelParams) -> float:
    """Steady free-running amplitude |a0| = sqrt(nu/kappa); requires nu > 0."""
    if p.nu <= 0:
        raise NoLimitCycle(f"nu = {p.nu} <= 0: stable fixed point at the origin")
    return math.sqrt(p.nu / p.kappa)


def normalized_amplitude(p: ModelParams, s: float) -> float:
    """Normalized forcing amplitude s_tilde = s / (sqrt(gamma) * |a0|)."""
    return s / (math.sqrt(p.gamma) * limit_cycle_amplitude(p))


def forcing_from_normalized(p: ModelParams, s_tilde: float) -> float:
    """Physical forcing amplitude s for a given s_tilde."""
    return s_tilde * math.sqrt(p.gamma) * limit_cycle_amplitude(p)


def scattering_matrix(
    p: ModelParams,
    c: Coupling,
    omega: float,
    s: float,
    policy: BranchPolicy = "largest-stable",
    prev_rho_sq: tuple[float | None, float | None] = (None, None),
    include_mode: bool = True,
) -> ScatteringResult:
    """Evaluate the amplitude-dependent S-matrix at one (omega, s) point.

    ``include_mode=False`` formally suppresses the mode (rho_j = 0), leaving
    the linear background only; this is the linear reference limit.
    ``prev_rho_sq`` feeds the per-port continuation state during sweeps.
    """
    if s <= 0:
        raise ZeroInput(f"forcing amplitude must be > 0, got {s}")
    s_lin = background_matrix(c, p, omega)
    s_nl = np.zeros((2, 2), dtype=complex)
    responses = None
    warns: list[str] = []

    if include_mode:
        resp = []
        for j in (1, 2):
            fr = forced_response(
                p,
                c,
                ForcingPoint(omega=omega, s=s, port=j),
                policy=policy,
                prev_rho_sq=prev_rho_sq[j - 1],
            )
            s_nl[:, j - 1] = c.D * (fr.rho * np.exp(1j * fr.phi) / s)
            if fr.n_real_roots > 1:
                warns.append(
                    f"UnsyncWarning: port {j}: {fr.n_real_roots} amplitude roots, "
                    f"S column is branch-dependent (policy={policy})"
                )
            resp.append(fr)
        responses = (resp[0], resp[1])

    S = s_lin + s_nl
    a1 = absorption(S, 1)
    a2 = absorption(S, 2)
    try:
        s_tilde = normalized_amplitude(p, s)
    except NoLimitCycle:
        s_tilde = float("nan")
    return ScatteringResult(
        S_linear=s_lin,
        S_nonlinear=s_nl,
        S=S,
        alpha=(a1, a2),
        superradiant=(a1 < 0.0, a2 < 0.0),
        s_tilde=s_tilde,
        responses=responses,
        warnings=tuple(warns),
    )


def scattering_from_signals(s_in: np.ndarray, s_out: np.ndarray) -> np.ndarray:
    """Rank-1 S estimate |s_out><s_in| / <s_in|s_in> (Moore-Penrose pseudoinverse).

    This is how columns are assembled from single-port runs: for
    s_in = s*|j>, the estimate has column j equal to s_out/s and the other
    column zero, so the two per-port estimates sum to the full S.
    """
    s_in = np.asarray(s_in, dtype=complex)
    s_out = np.asarray(s_out, dtype=complex)
    power = float(np.real(np.vdot(s_in, s_in)))
    if power == 0.0:
        raise ZeroInput("cannot estimate S from a zero input wave")
    return np.outer(s_out, s_in.conj()) / power


def absorption(S: np.ndarray, j: int) -> float:
    """alpha_j = 1 - |S_1j|^2 - |S_2j|^2 for forcing from port j (1|2)."""
    col = S[:, j - 1]
    return float(1.0 - np.abs(col[0]) ** 2 - np.abs(col[1]) ** 2)
