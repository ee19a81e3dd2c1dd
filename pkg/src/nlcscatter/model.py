"""Model parameters and construction of the port-coupling vector.

The scatterer is a single self-oscillating cavity mode coupled to two ports.
Its linear background is specified through two user-level matrices: a
diagonal reflective target

    S_* = [[1 + eps/sigma, 0], [0, 1 - eps/sigma]]

and a purely transmissive constant background C = [[0, 1], [1, 0]].  The
coupling vector D is obtained from the dominant eigenpair of the Hermitian
matrix ``sigma*S_* - C``:

    D = v1 * sqrt(gamma * mu1) = sqrt(gamma*h) * (-g, 1)^T,

with g(eps) = eps + sqrt(eps^2+1) and
h(sigma, eps) = (sigma + sqrt(eps^2+1)) / (g^2 + 1).  The construction is
exact (rank-1) only for sigma=1, eps=0; its quality is measured by the
subdominant-to-dominant eigenvalue ratio |mu2|/|mu1|.

All rates are stored in rad/s.  Frequency/Hz conversion happens at the CLI
boundary only.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ApproximationQualityWarning,
    DegenerateSpectrum,
    InvalidParams,
    IrreversibleBackground,
)

__all__ = [
    "ModelParams",
    "Coupling",
    "ValidationReport",
    "BACKGROUND_C",
    "target_matrix",
    "spectral_pairs",
    "build_coupling",
    "background_matrix",
    "validate_conditions",
]

#: Constant (purely transmissive) component of the background scattering.
BACKGROUND_C = np.array([[0.0, 1.0], [1.0, 0.0]])

#: |mu2|/|mu1| above which the rank-1 construction is considered degraded.
QUALITY_WARN_RATIO = 0.5

#: Relative eigenvalue gap below which the dominant subspace is undefined.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the nonlinear mode and its background.

    omega0  : angular eigenfrequency (rad/s), > 0
    nu      : linear growth rate (rad/s); > 0 for a self-oscillating mode,
              <= 0 allowed only for linear-limit reference computations
    kappa   : cubic saturation constant (1/(amplitude^2 s)), > 0
    gamma   : background decay rate (rad/s), > 0
    sigma   : unitarity factor of the target matrix, >= 0 (0 is degenerate)
    epsilon : asymmetry (bias) of the target matrix, any real
    """

    omega0: float
    nu: float
    kappa: float
    gamma: float
    sigma: float
    epsilon: float

    def __post_init__(self) -> None:
        vals = [self.omega0, self.nu, self.kappa, self.gamma, self.sigma, self.epsilon]
        if not all(math.isfinite(v) for v in vals):
            raise InvalidParams("all model parameters must be finite")
        if self.omega0 <= 0:
            raise InvalidParams(f"omega0 must be > 0, got {self.omega0}")
        if self.kappa <= 0:
            raise InvalidParams(f"kappa must be > 0, got {self.kappa}")
        if self.gamma <= 0:
            raise InvalidParams(f"gamma must be > 0, got {self.gamma}")
        if self.sigma < 0:
            raise InvalidParams(f"sigma must be >= 0, got {self.sigma}")


@dataclass(frozen=True)
class Coupling:
    """Derived coupling quantities for a given parameter set.

    g, h     : closed-form factors of the coupling construction
    D        : real 2-vector sqrt(gamma*h) * (-g, 1)^T
    gamma_i  : internal (dissipative) decay rate, D^T D = 2(gamma - gamma_i)
    mu1, mu2 : eigenvalues of sigma*S_* - C with |mu1| >= |mu2|
    v1, v2   : corresponding orthonormal eigenvectors
    """

    g: float
    h: float
    D: np.ndarray
    gamma_i: float
    mu1: float
    mu2: float
    v1: np.ndarray
    v2: np.ndarray


@dataclass(frozen=True)
class ValidationReport:
    """Residuals of the spectral identities the construction must satisfy.

    condition1_residual : ||D gamma^-1 D^T - mu1 v1 v1^T||_F
    matched_unitarity_defect : ||S^H S - I||_F for the resonant background of
        the perfectly matched configuration (sigma=1, eps=0, same gamma)
    decay_relation_residual : |D^T D - 2 (gamma - gamma_i)|
    reconstruction_residual : ||sigma*S_* - C - mu1 v1 v1^T - mu2 v2 v2^T||_F
    quality_ratio : |mu2|/|mu1| (0 means the rank-1 approximation is exact)
    """

    condition1_residual: float
    matched_unitarity_defect: float
    decay_relation_residual: float
    reconstruction_residual: float
    quality_ratio: float
    quality_degraded: bool
    passed: bool


def target_matrix(sigma: float, epsilon: float) -> np.ndarray:
    """Diagonal reflective target matrix S_*.  Requires sigma > 0."""
    if sigma <= 0:
        raise InvalidParams(f"target matrix needs sigma > 0, got {sigma}")
    return np.array([[1.0 + epsilon / sigma, 0.0], [0.0, 1.0 - epsilon / sigma]])


def spectral_pairs(sigma: float, epsilon: float):
    """Closed-form eigenpairs (mu1, v1), (mu2, v2) of sigma*S_* - C.

    mu1 = sigma + sqrt(eps^2+1), mu2 = sigma - sqrt(eps^2+1),
    v1 = (-g, 1)/sqrt(g^2+1), v2 = (1, g)/sqrt(g^2+1).

    Raises DegenerateSpectrum when |mu1| == |mu2| within tolerance, which for
    sigma >= 0 happens exactly at sigma = 0: there is no distinguished
    dominant subspace and the coupling vector is undefined.
    """
    if sigma < 0:
        raise InvalidParams(f"sigma must be >= 0, got {sigma}")
    root = math.sqrt(epsilon * epsilon + 1.0)
    mu1 = sigma + root
    mu2 = sigma - root
    if abs(mu1) - abs(mu2) <= DEGENERACY_TOL * abs(mu1):
        raise DegenerateSpectrum(
            f"|mu1| = |mu2| = {abs(mu1):.6g} (sigma={sigma}, epsilon={epsilon}): "
            "no dominant spectral subspace"
        )
    g = epsilon + root
    norm = math.sqrt(g * g + 1.0)
    v1 = np.array([-g, 1.0]) / norm
    v2 = np.array([1.0, g]) / norm
    return mu1, v1, mu2, v2


def build_coupling(p: ModelParams) -> Coupling:
    """Construct the coupling vector D and related quantities from ``p``.

    D = sqrt(gamma*h) * (-g, 1)^T shares the dominant eigenpair of
    sigma*S_* - C with D gamma^-1 D^T (condition I), and the internal decay
    rate follows from D^T D = 2 (gamma - gamma_i).

    Warns with ApproximationQualityWarning when |mu2|/|mu1| exceeds 0.5.
    """
    if p.gamma <= 0:
        raise InvalidParams(f"gamma must be > 0, got {p.gamma}")
    mu1, v1, mu2, v2 = spectral_pairs(p.sigma, p.epsilon)

    root = math.sqrt(p.epsilon * p.epsilon + 1.0)
    g = p.epsilon + root
    h = (p.sigma + root) / (g * g + 1.0)
    D = math.sqrt(p.gamma * h) * np.array([-g, 1.0])
    gamma_i = p.gamma * (1.0 - (p.sigma + root) / 2.0)
    if gamma_i >= p.gamma:
        # Unreachable for sigma > 0; kept as a guard for future target matrices.
        raise IrreversibleBackground(
            f"gamma_i = {gamma_i:.6g} >= gamma = {p.gamma:.6g}: "
            "reversible rate would be non-positive"
        )

    ratio = abs(mu2) / abs(mu1)
    if ratio > QUALITY_WARN_RATIO:
        warnings.warn(
            f"|mu2|/|mu1| = {ratio:.3f} > {QUALITY_WARN_RATIO}: low-rank coupling "
            "construction is degrading",
            ApproximationQualityWarning,
            stacklevel=2,
        )
    return Coupling(g=g, h=h, D=D, gamma_i=gamma_i, mu1=mu1, mu2=mu2, v1=v1, v2=v2)


def background_matrix(c: Coupling, p: ModelParams, omega: float) -> np.ndarray:
    """Frequency-dependent linear background C + D F^-1 D^T, F = i*(omega-omega0) + gamma.

    F never vanishes (gamma > 0).  At resonance with sigma=1, eps=0 the
    result is the identity (perfect matching); for sigma=1, eps=0 it is
    unitary at every frequency.
    """
    F = 1j * (omega - p.omega0) + p.gamma
    return BACKGROUND_C + np.outer(c.D, c.D) / F


def validate_conditions(c: Coupling, p: ModelParams) -> ValidationReport:
    """Check the spectral identities behind the coupling construction.

    The report carries the residual of condition (I) (dominant-subspectrum
    identity), the unitarity defect of the perfectly matched background
    (condition II, evaluated at sigma=1, eps=0 with the same gamma), the
    decay-rate relation, the two-term spectral reconstruction, and the
    approximation quality ratio |mu2|/|mu1|.
    """
    cond1 = np.linalg.norm(
        np.outer(c.D, c.D) / p.gamma - c.mu1 * np.outer(c.v1, c.v1)
    )

    matched = ModelParams(
        omega0=p.omega0, nu=p.nu, kappa=p.kappa, gamma=p.gamma, sigma=1.0, epsilon=0.0
    )
    s_matched = background_matrix(build_coupling(matched), matched, p.omega0)
    cond2 = np.linalg.norm(s_matched.conj().T @ s_matched - np.eye(2))

    decay = abs(float(c.D @ c.D) - 2.0 * (p.gamma - c.gamma_i))

    # sigma = 0 cannot reach here: a Coupling never exists for it.
    lhs = p.sigma * target_matrix(p.sigma, p.epsilon) - BACKGROUND_C
    recon = np.linalg.norm(
        lhs - c.mu1 * np.outer(c.v1, c.v1) - c.mu2 * np.outer(c.v2, c.v2)
    )

    ratio = abs(c.mu2) / abs(c.mu1)
    tol = 1e-12
    passed = cond1 < tol and cond2 < tol and decay < tol * max(1.0, p.gamma) and recon < tol * max(1.0, abs(c.mu1))
    return ValidationReport(
        condition1_residual=float(cond1),
        matched_unitarity_defect=float(cond2),
        decay_relation_residual=float(decay),
        reconstruction_residual=float(recon),
        quality_ratio=float(ratio),
        quality_degraded=bool(ratio > QUALITY_WARN_RATIO),
        passed=bool(passed),
    )
