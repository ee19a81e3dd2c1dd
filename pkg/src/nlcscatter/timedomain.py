"""Direct time-domain integration of the modal dynamics (independent oracle).

Integrates the forced complex amplitude equation

    da/dt = (i*omega0 + nu - kappa*|a|^2) a + D_j s e^{i omega t}

with fixed-step RK4 in the rotating frame b = a*e^{-i omega t}, where the
drive is constant and the step size is bound by the slow rates (nu, Delta,
kappa*rho^2) instead of the carrier.  Outgoing waves follow from the
input-output relation

    |s_out> = (C + D F^-1 D^T)|s_in> + D a .

The steady response is extracted by least-squares demodulation against
e^{i omega t} over an integer number of forcing periods; the off-line
residual power provides the synchronization verdict.  Fixed points of the
flow are exact fixed points of the RK4 map, so a synchronized run converges
to the true steady state and the comparison with the analytic solution is a
genuine cross-check of the algebra, not of the integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoLimitCycle, NonConvergence, StepTooLarge, WindowMismatch
from .forced_response import ForcingPoint
from .model import Coupling, ModelParams, background_matrix

__all__ = [
    "SimConfig",
    "SimResult",
    "FreeRunResult",
    "simulate_free",
    "simulate_forced",
    "demodulate",
    "scattering_estimate",
]

#: Default number of integration substeps per forcing period.
STEPS_PER_PERIOD = 256
#: Resolution floor: at least this many steps per period of max(omega, omega0).
MIN_STEPS_PER_PERIOD = 50
#: Default measurement window, in forcing periods.
MEASURE_PERIODS = 50
#: Default transient length, in units of 1/nu.
TRANSIENT_TIME_CONSTANTS = 20.0
#: Off-line residual power below which the response counts as synchronized.
SYNC_THRESHOLD = 1e-4


@dataclass(frozen=True)
class SimConfig:
    """Integration controls; None fields resolve to spec'd defaults.

    dt          : time step (default forcing period / 256)
    t_transient : discarded transient (default 20/nu)
    t_measure   : measurement window, snapped to an integer number of
                  forcing periods (default 50 periods)
    init        : initial complex modal amplitude (default limit-cycle seed
                  sqrt(nu/kappa), or 0 when nu <= 0)
    """

    dt: float | None = None
    t_transient: float | None = None
    t_measure: float | None = None
    init: complex | None = None

    def resolve(self, p: ModelParams, omega: float) -> "_ResolvedConfig":
        period = 2.0 * math.pi / omega
        floor = 2.0 * math.pi / (MIN_STEPS_PER_PERIOD * max(omega, p.omega0))
        if self.dt is None:
            n_sub = STEPS_PER_PERIOD
        else:
            if self.dt >= floor:
                raise StepTooLarge(
                    f"dt = {self.dt:.3e} >= resolution floor {floor:.3e} "
                    f"(need > {MIN_STEPS_PER_PERIOD} steps per period)"
                )
            n_sub = int(math.ceil(period / self.dt))
        dt = period / n_sub
        if dt >= floor:
            raise StepTooLarge(
                f"dt = {dt:.3e} >= resolution floor {floor:.3e}"
            )

        if self.t_transient is None:
            if p.nu > 0:
                t_trans = TRANSIENT_TIME_CONSTANTS / p.nu
            else:
                t_trans = TRANSIENT_TIME_CONSTANTS / p.gamma
        else:
            t_trans = self.t_transient
        n_trans = int(math.ceil(t_trans / dt)) if t_trans > 0 else 0

        if self.t_measure is None:
            n_periods = MEASURE_PERIODS
        else:
            n_periods = int(round(self.t_measure / period))
            if n_periods < 1 or abs(n_periods * period - self.t_measure) > dt:
                raise WindowMismatch(
                    f"t_measure = {self.t_measure:.6e} is not an integer number "
                    f"of forcing periods {period:.6e} within one dt"
                )

        if self.init is None:
            init = complex(math.sqrt(p.nu / p.kappa)) if p.nu > 0 else 0.0j
        else:
            init = complex(self.init)
        return _ResolvedConfig(
            dt=dt, n_sub=n_sub, n_transient=n_trans, n_periods=n_periods, init=init
        )


@dataclass(frozen=True)
class _ResolvedConfig:
    dt: float
    n_sub: int
    n_transient: int
    n_periods: int
    init: complex


@dataclass(frozen=True)
class FreeRunResult:
    """Free-running trajectory: times, complex amplitude, final |a|."""

    t: np.ndarray
    a: np.ndarray
    final_amplitude: float


@dataclass(frozen=True)
class SimResult:
    """Forced-run steady-state measurement.

    t, a          : lab-frame trajectory over the measurement window
    s_out_series  : outgoing 2-vector time series over the same window
    rho_hat, phi_hat : demodulated modal amplitude and phase at omega
    residual_power : fraction of modal power off the forcing line
    sync          : residual_power < 1e-4
    out_amplitudes : demodulated outgoing wave amplitudes (2-vector)
    s_column      : out_amplitudes / s, the measured S-matrix column
    """

    t: np.ndarray
    a: np.ndarray
    s_out_series: np.ndarray
    rho_hat: float
    phi_hat: float
    residual_power: float
    sync: bool
    out_amplitudes: np.ndarray
    s_column: np.ndarray


def _rk4(b: complex, c0: complex, kap: float, drive: complex, dt: float,
         n_steps: int, record: np.ndarray | None = None) -> complex:
    """March db/dt = (c0 - kap*|b|^2) b + drive; optionally record each step.

    record[i] receives the state *after* step i (length n_steps).
    """
    sixth = dt / 6.0
    half = dt / 2.0
    for i in range(n_steps):
        k1 = (c0 - kap * (b.real * b.real + b.imag * b.imag)) * b + drive
        b2 = b + half * k1
        k2 = (c0 - kap * (b2.real * b2.real + b2.imag * b2.imag)) * b2 + drive
        b3 = b + half * k2
        k3 = (c0 - kap * (b3.real * b3.real + b3.imag * b3.imag)) * b3 + drive
        b4 = b + dt * k3
        k4 = (c0 - kap * (b4.real * b4.real + b4.imag * b4.imag)) * b4 + drive
        b = b + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if record is not None:
            record[i] = b
    return b


def simulate_free(p: ModelParams, cfg: SimConfig | None = None) -> FreeRunResult:
    """Integrate the unforced mode in the lab frame.

    From any nonzero initial amplitude, |a| must reach sqrt(nu/kappa) within
    1e-6 relative by the end of the run (NonConvergence otherwise); a(0) = 0
    is the unstable equilibrium and simply stays there.
    """
    if p.nu <= 0:
        raise NoLimitCycle(f"nu = {p.nu} <= 0: free run decays to the origin")
    cfg = cfg or SimConfig()
    # No forcing: the natural period sets the step.
    r = cfg.resolve(p, p.omega0)
    init = complex(math.sqrt(p.nu / p.kappa)) if cfg.init is None else complex(cfg.init)

    n_total = r.n_transient + r.n_periods * r.n_sub
    a_series = np.empty(n_total + 1, dtype=complex)
    a_series[0] = init
    _rk4(init, complex(p.nu, p.omega0), p.kappa, 0.0j, r.dt, n_total, a_series[1:])
    t = np.arange(n_total + 1) * r.dt

    final = float(abs(a_series[-1]))
    target = math.sqrt(p.nu / p.kappa)
    if init != 0 and abs(final - target) > 1e-6 * target:
        raise NonConvergence(
            f"|a| = {final:.9g} did not reach sqrt(nu/kappa) = {target:.9g} "
            "within 1e-6 relative by the end of the run"
        )
    return FreeRunResult(t=t, a=a_series, final_amplitude=final)


def simulate_forced(
    p: ModelParams, c: Coupling, f: ForcingPoint, cfg: SimConfig | None = None
) -> SimResult:
    """Integrate the forced mode and demodulate the steady response.

    The rotating-frame drive is D_j * s; the recorded measurement window is
    transformed back to the lab frame, demodulated at the forcing frequency,
    and pushed through the input-output relation to form outgoing waves.
    """
    cfg = cfg or SimConfig()
    r = cfg.resolve(p, f.omega)
    delta = f.omega - p.omega0
    c0 = complex(p.nu, -delta)
    drive = complex(c.D[f.port - 1] * f.s)

    b = _rk4(r.init, c0, p.kappa, drive, r.dt, r.n_transient)
    n_meas = r.n_periods * r.n_sub
    b_series = np.empty(n_meas, dtype=complex)
    _rk4(b, c0, p.kappa, drive, r.dt, n_meas, b_series)

    t = (r.n_transient + 1 + np.arange(n_meas)) * r.dt
    carrier = np.exp(1j * f.omega * t)
    a_series = b_series * carrier

    s_in_vec = np.zeros(2, dtype=complex)
    s_in_vec[f.port - 1] = f.s
    s_lin = background_matrix(c, p, f.omega)
    s_out_series = (s_lin @ s_in_vec)[:, None] * carrier[None, :] + np.outer(
        c.D, a_series
    )

    rho_hat, phi_hat, residual = demodulate(t, a_series, f.omega)
    out1 = demodulate(t, s_out_series[0], f.omega)
    out2 = demodulate(t, s_out_series[1], f.omega)
    out_amp = np.array(
        [out1[0] * np.exp(1j * out1[1]), out2[0] * np.exp(1j * out2[1])]
    )
    return SimResult(
        t=t,
        a=a_series,
        s_out_series=s_out_series,
        rho_hat=rho_hat,
        phi_hat=phi_hat,
        residual_power=residual,
        sync=bool(residual < SYNC_THRESHOLD),
        out_amplitudes=out_amp,
        s_column=out_amp / f.s,
    )


def demodulate(t: np.ndarray, series: np.ndarray, omega: float):
    """Least-squares projection of ``series`` onto e^{i omega t}.

    Returns (rho_hat, phi_hat, residual_power) with phi_hat in [0, 2*pi).
    The window N*dt must span an integer number of periods 2*pi/omega within
    one dt (WindowMismatch otherwise); integer-period projection is immune
    to spectral leakage at non-grid frequencies.  A zero series returns
    (0, 0, 0) by convention.
    """
    t = np.asarray(t, dtype=float)
    series = np.asarray(series, dtype=complex)
    if t.shape != series.shape or t.ndim != 1 or t.size < 2:
        raise WindowMismatch("need matching 1-D t/series arrays with >= 2 samples")
    dt = t[1] - t[0]
    duration = series.size * dt
    period = 2.0 * math.pi / omega
    n_periods = round(duration / period)
    if n_periods < 1 or abs(n_periods * period - duration) > dt * (1 + 1e-9):
        raise WindowMismatch(
            f"window {duration:.6e} is not an integer number of periods "
            f"{period:.6e} within one dt"
        )

    total_power = float(np.mean(np.abs(series) ** 2))
    if total_power == 0.0:
        return 0.0, 0.0, 0.0
    coeff = complex(np.mean(series * np.exp(-1j * omega * t)))
    residual = 1.0 - (abs(coeff) ** 2) / total_power
    residual = min(max(residual, 0.0), 1.0)
    rho_hat = abs(coeff)
    phi_hat = _wrap_2pi(math.atan2(coeff.imag, coeff.real)) if rho_hat else 0.0
    return rho_hat, phi_hat, residual


def _wrap_2pi(phi: float) -> float:
    two_pi = 2.0 * math.pi
    phi = phi % two_pi
    return phi if phi < two_pi else 0.0


def scattering_estimate(per_port: dict[int, SimResult], s: float) -> np.ndarray:
    """Assemble a full S estimate from single-port runs via the rank-1 formula.

    ``per_port`` maps port index (1|2) to its SimResult.  Each run
    contributes |s_out><s_in| / <s_in|s_in> with s_in = s*|j>; the sum of
    the two rank-1 estimates is the measured S.
    """
    from .scattering import scattering_from_signals

    S = np.zeros((2, 2), dtype=complex)
    for port, res in per_port.items():
        s_in = np.zeros(2, dtype=complex)
        s_in[port - 1] = s
        S += scattering_from_signals(s_in, res.out_amplitudes)
    return S
