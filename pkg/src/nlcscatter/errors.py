"""Exception hierarchy shared across the package.

Every error raised by the library derives from :class:`NlcError`, so callers
(in particular the CLI) can distinguish library failures from programming
errors with a single except clause.
"""

__all__ = [
    "NlcError",
    "InvalidParams",
    "IrreversibleBackground",
    "DegenerateSpectrum",
    "NoPositiveRoot",
    "ArcsinDomain",
    "MarginalStability",
    "NoLimitCycle",
    "ZeroInput",
    "StepTooLarge",
    "WindowMismatch",
    "NonConvergence",
    "EmptyContour",
    "ConfigError",
    "ApproximationQualityWarning",
]


class NlcError(Exception):
    """Base class for all library errors."""


class InvalidParams(NlcError):
    """Model parameters violate a hard constraint (sign, finiteness)."""


class IrreversibleBackground(NlcError):
    """Derived internal decay rate would meet or exceed the total decay rate."""


class DegenerateSpectrum(NlcError):
    """|mu1| == |mu2|: no dominant spectral subspace, coupling undefined."""


class NoPositiveRoot(NlcError):
    """Amplitude cubic returned no positive root (internal error for s > 0)."""


class ArcsinDomain(NlcError):
    """Phase equation argument outside [-1, 1]: rho is not a consistent root."""


class MarginalStability(NlcError):
    """Slow-flow Jacobian has an eigenvalue too close to the imaginary axis."""


class NoLimitCycle(NlcError):
    """Requested a limit-cycle quantity with non-positive growth rate."""


class ZeroInput(NlcError):
    """Rank-1 scattering estimate requested for a zero input wave."""


class StepTooLarge(NlcError):
    """Integrator time step violates the resolution floor."""


class WindowMismatch(NlcError):
    """Demodulation window does not span an integer number of periods."""


class NonConvergence(NlcError):
    """Time-domain run did not reach the expected steady state."""


class EmptyContour(NlcError):
    """Scalar field has uniform sign; no zero-level contour exists."""


class ConfigError(NlcError):
    """Run configuration is missing, ambiguous, or inconsistent."""


class ApproximationQualityWarning(UserWarning):
    """Low-rank coupling construction is degrading (|mu2|/|mu1| large)."""
