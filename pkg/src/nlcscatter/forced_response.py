"""Synchronized forced response of the self-oscillating mode.

Under single-port harmonic forcing s*exp(i*omega*t) into port j, a
synchronized steady state a = rho*exp(i*(omega*t + phi)) of the modal
equation

    da/dt = (i*omega0 + nu - kappa*|a|^2) a + D_j s e^{i omega t}

satisfies the amplitude condition (a cubic in X = rho^2)

    kappa^2 X^3 - 2 nu kappa X^2 + (nu^2 + Delta^2) X - |D_j|^2 s^2 = 0

and the phase condition phi = arg(D_j) - arg(kappa*rho^2 - nu + i*Delta),
with Delta = omega - omega0.  The phase formula reduces to the principal
arcsin branch -arg(D_j) - arcsin(Delta*rho/(|D_j| s)) whenever
kappa*rho^2 >= nu, which holds for the selected root in the single-root
regime; for subsidiary roots the other branch is the one consistent with
the steady-state equation.

Roots are computed with the companion-matrix eigenvalue method (robust near
double roots at the synchronization boundary) and polished by Newton steps.
Stability is classified from the 2x2 real Jacobian of the rotating-frame
slow flow b' = (nu - i*Delta - kappa*|b|^2) b + D_j s.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ArcsinDomain, InvalidParams, MarginalStability, NoPositiveRoot
from .model import Coupling, ModelParams

__all__ = [
    "ForcingPoint",
    "ForcedResponse",
    "BranchPolicy",
    "amplitude_cubic_coeffs",
    "solve_amplitude",
    "solve_phase",
    "classify_stability",
    "slow_flow_jacobian",
    "forced_response",
]

BranchPolicy = Literal["continuation", "largest-stable"]

#: Imaginary-part cutoff for accepting a companion-matrix root as real.
IMAG_TOL = 1e-9
#: Scaled polynomial residual bound for accepted roots.
RESIDUAL_TOL = 1e-10
#: Tolerance on the arcsin argument exceeding 1 (inconsistent rho).
ARCSIN_TOL = 1e-9


@dataclass(frozen=True)
class ForcingPoint:
    """Single-port harmonic forcing: angular frequency, amplitude, port (1|2)."""

    omega: float
    s: float
    port: int

    def __post_init__(self) -> None:
        if self.omega <= 0:
            raise InvalidParams(f"forcing omega must be > 0, got {self.omega}")
        if self.s <= 0:
            raise InvalidParams(f"forcing amplitude must be > 0, got {self.s}")
        if self.port not in (1, 2):
            raise InvalidParams(f"port must be 1 or 2, got {self.port}")


@dataclass(frozen=True)
class ForcedResponse:
    """Selected synchronized solution plus root multiplicity metadata.

    rho, phi     : selected steady amplitude (>= 0) and phase in [0, 2*pi)
    detuning     : omega - omega0 (rad/s)
    n_real_roots : number of positive real roots of the amplitude cubic
    stable       : linear stability of the selected slow-flow fixed point
    branches     : all (rho, phi, stable) triples, rho ascending
    """

    rho: float
    phi: float
    detuning: float
    n_real_roots: int
    stable: bool
    branches: tuple[tuple[float, float, bool], ...]


def amplitude_cubic_coeffs(p: ModelParams, dj_abs: float, s: float, delta: float) -> np.ndarray:
    """Coefficients (descending powers of X = rho^2) of the amplitude cubic."""
    return np.array(
        [
            p.kappa**2,
            -2.0 * p.nu * p.kappa,
            p.nu**2 + delta**2,
            -((dj_abs * s) ** 2),
        ]
    )


def _polish_root(coeffs: np.ndarray, x: float, steps: int = 2) -> float:
    """Newton-polish a real root of the cubic; no-op near double roots."""
    c3, c2, c1, c0 = coeffs
    for _ in range(steps):
        f = ((c3 * x + c2) * x + c1) * x + c0
        df = (3.0 * c3 * x + 2.0 * c2) * x + c1
        if df == 0.0:
            break
        step = f / df
        if not math.isfinite(step):
            break
        x -= step
    return x


def solve_amplitude(p: ModelParams, c: Coupling, f: ForcingPoint) -> np.ndarray:
    """All positive real amplitude roots rho, ascending.

    Solves the cubic in X = rho^2 via the companion matrix (np.roots),
    discards roots with |imag| > 1e-9 * max(1, |real|), Newton-polishes the
    survivors and verifies the scaled polynomial residual < 1e-10.
    """
    delta = f.omega - p.omega0
    dj_abs = abs(c.D[f.port - 1])
    coeffs = amplitude_cubic_coeffs(p, dj_abs, f.s, delta)
    raw = np.roots(coeffs)

    xs = []
    for z in raw:
        if abs(z.imag) > IMAG_TOL * max(1.0, abs(z.real)):
            continue
        x = _polish_root(coeffs, float(z.real))
        if x > 0.0:
            xs.append(x)
    if not xs:
        # Impossible for s > 0: the cubic is negative at 0 and positive at
        # +inf, so a positive real root always exists.
        raise NoPositiveRoot(
            f"no positive amplitude root (port {f.port}, s={f.s}, delta={delta})"
        )

    xs = sorted(xs)
    scale = float(np.max(np.abs(coeffs)))
    for x in xs:
        residual = abs(float(np.polyval(coeffs, x)))
        if residual > RESIDUAL_TOL * scale:
            raise NoPositiveRoot(
                f"amplitude root failed residual check: {residual:.3e} > "
                f"{RESIDUAL_TOL:.0e} * {scale:.3e}"
            )
    return np.sqrt(np.array(xs))


def solve_phase(p: ModelParams, c: Coupling, f: ForcingPoint, rho: float) -> float:
    """Steady-state phase phi in [0, 2*pi) for an amplitude root rho.

    Checks the arcsin-domain condition |Delta*rho/(|D_j| s)| <= 1 + 1e-9
    (violated only by an inconsistent rho), then evaluates
    phi = arg(D_j) - arg(kappa*rho^2 - nu + i*Delta), which selects the
    branch that satisfies the complex steady-state equation for this root.
    With the real constructed D, arg(D_1) = pi and arg(D_2) = 0.
    """
    delta = f.omega - p.omega0
    dj = c.D[f.port - 1]
    arg = delta * rho / (abs(dj) * f.s)
    if abs(arg) > 1.0 + ARCSIN_TOL:
        raise ArcsinDomain(
            f"arcsin argument {arg:.6g} outside [-1, 1]: rho={rho} is not a "
            "consistent amplitude root"
        )
    phi = cmath.phase(complex(dj)) - cmath.phase(
        complex(p.kappa * rho * rho - p.nu, delta)
    )
    return _wrap_2pi(phi)


def _wrap_2pi(phi: float) -> float:
    """Reduce to [0, 2*pi); guards the mod rounding up to exactly 2*pi."""
    two_pi = 2.0 * math.pi
    phi = phi % two_pi
    return phi if phi < two_pi else 0.0


def slow_flow_jacobian(p: ModelParams, f: ForcingPoint, rho: float, phi: float) -> np.ndarray:
    """Real 2x2 Jacobian of the rotating-frame slow flow at b = rho*e^{i phi}.

    For db/dt = F(b, b*) with dF/db = (nu - 2 kappa rho^2) - i Delta and
    dF/db* = -kappa b^2, the Jacobian in (Re b, Im b) coordinates is
    [[pr + qr, qi - pi], [pi + qi, pr - qr]].
    """
    delta = f.omega - p.omega0
    pr = p.nu - 2.0 * p.kappa * rho * rho
    pi = -delta
    q = -p.kappa * (rho * cmath.exp(1j * phi)) ** 2
    qr, qi = q.real, q.imag
    return np.array([[pr + qr, qi - pi], [pi + qi, pr - qr]])


def classify_stability(p: ModelParams, f: ForcingPoint, rho: float, phi: float) -> bool:
    """Linear stability of the synchronized fixed point (rho, phi).

    True iff both eigenvalues of the slow-flow Jacobian have negative real
    part.  Raises MarginalStability when the largest real part is within
    1e-9*|nu| of zero (the verdict would be noise).
    """
    eig = np.linalg.eigvals(slow_flow_jacobian(p, f, rho, phi))
    max_re = float(np.max(eig.real))
    tol = 1e-9 * abs(p.nu) if p.nu != 0.0 else 1e-12
    if abs(max_re) <= tol:
        raise MarginalStability(
            f"max Re(eigenvalue) = {max_re:.3e} within {tol:.1e} of zero"
        )
    return max_re < 0.0


def forced_response(
    p: ModelParams,
    c: Coupling,
    f: ForcingPoint,
    policy: BranchPolicy = "largest-stable",
    prev_rho_sq: float | None = None,
) -> ForcedResponse:
    """Solve amplitude, phase and stability; select one branch.

    In the single-root regime the policy is irrelevant.  With multiple
    roots, "largest-stable" picks the largest stable root (largest overall
    if none is stable), while "continuation" picks the stable root closest
    in rho^2 to ``prev_rho_sq`` (falling back to "largest-stable" at the
    start of a sweep row).
    """
    rhos = solve_amplitude(p, c, f)
    branches = []
    for rho in rhos:
        phi = solve_phase(p, c, f, float(rho))
        stable = classify_stability(p, f, float(rho), phi)
        branches.append((float(rho), phi, stable))

    if len(branches) == 1:
        chosen = branches[0]
    elif policy == "continuation" and prev_rho_sq is not None:
        stable_branches = [b for b in branches if b[2]] or branches
        chosen = min(stable_branches, key=lambda b: abs(b[0] ** 2 - prev_rho_sq))
    else:
        stable_branches = [b for b in branches if b[2]]
        chosen = stable_branches[-1] if stable_branches else branches[-1]

    return ForcedResponse(
        rho=chosen[0],
        phi=chosen[1],
        detuning=f.omega - p.omega0,
        n_real_roots=len(branches),
        stable=chosen[2],
        branches=tuple(branches),
    )
