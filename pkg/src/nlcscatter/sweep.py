"""Rectangular (frequency x normalized amplitude) sweeps of the S-matrix.

Each amplitude row (fixed s_tilde) is processed in ascending frequency
order so the branch-continuation policy can track a solution branch across
the row; rows are independent of each other and are distributed across
worker processes.  Cell results are written once into dense arrays keyed by
(amplitude index, frequency index), so the assembled tables are bit-identical
for any worker count.

Zero-level contours of the absorption coefficients (the superradiant/lossy
domain boundaries) are extracted by marching squares with linear
interpolation along cell edges.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyContour, InvalidParams, NlcError
from .model import Coupling, ModelParams, background_matrix, build_coupling
from .scattering import forcing_from_normalized, scattering_matrix

__all__ = [
    "GridSpec",
    "SweepGrid",
    "run_sweep",
    "superradiance_contour",
    "marching_squares",
]

#: Fig.-2-style default axes: 1 Hz frequency step, logarithmic amplitudes.
#: The amplitude extent reaches 25 so that both absorption sign changes fall
#: inside the grid (the port-1 lossy region only opens above s_tilde ~ 16
#: for the biased reference parameters).
DEFAULT_FREQ_HZ = (1740.0, 1900.0, 161)
DEFAULT_S_TILDE = (0.1, 25.0, 61)


@dataclass(frozen=True)
class GridSpec:
    """Evaluation axes: frequencies in Hz and normalized amplitudes s_tilde."""

    freq_hz: np.ndarray
    s_tilde: np.ndarray

    def __post_init__(self) -> None:
        f = np.asarray(self.freq_hz, dtype=float)
        a = np.asarray(self.s_tilde, dtype=float)
        if f.ndim != 1 or a.ndim != 1 or f.size < 1 or a.size < 1:
            raise InvalidParams("grid axes must be non-empty 1-D arrays")
        if np.any(f <= 0) or np.any(a <= 0):
            raise InvalidParams("grid axes must be positive")
        if f.size > 1 and np.any(np.diff(f) <= 0):
            raise InvalidParams("freq_hz axis must be strictly increasing")
        if a.size > 1 and np.any(np.diff(a) <= 0):
            raise InvalidParams("s_tilde axis must be strictly increasing")
        object.__setattr__(self, "freq_hz", f)
        object.__setattr__(self, "s_tilde", a)

    @staticmethod
    def from_ranges(
        f_min: float,
        f_max: float,
        n_freq: int,
        s_min: float,
        s_max: float,
        n_amp: int,
        log_amp: bool = True,
    ) -> "GridSpec":
        freq = np.linspace(f_min, f_max, n_freq)
        if log_amp:
            amp = np.logspace(math.log10(s_min), math.log10(s_max), n_amp)
        else:
            amp = np.linspace(s_min, s_max, n_amp)
        return GridSpec(freq_hz=freq, s_tilde=amp)

    @staticmethod
    def default() -> "GridSpec":
        return GridSpec.from_ranges(*DEFAULT_FREQ_HZ, *DEFAULT_S_TILDE)


@dataclass
class SweepGrid:
    """Dense sweep results keyed by (amplitude index, frequency index).

    S[j, i]          : 2x2 complex S-matrix at (s_tilde[j], freq_hz[i])
    alpha[j, i]      : (alpha_1, alpha_2)
    rho[j, i], phi[j, i] : selected synchronized solution per port
    n_roots[j, i]    : positive amplitude-root count per port
    sync_capable[j,i]: selected fixed point is linearly stable, per port
    superradiant[j,i]: alpha_j < 0, per port
    errors           : cell failures as {(i_freq, j_amp): message}
    """

    freq_hz: np.ndarray
    s_tilde: np.ndarray
    params: ModelParams
    coupling: Coupling
    policy: str
    S: np.ndarray
    S_linear: np.ndarray
    alpha: np.ndarray
    rho: np.ndarray
    phi: np.ndarray
    n_roots: np.ndarray
    sync_capable: np.ndarray
    superradiant: np.ndarray
    errors: dict = field(default_factory=dict)
    version: str = ""

    def result_at(self, i_freq: int, j_amp: int) -> dict:
        """Cell view by (frequency index, amplitude index)."""
        return {
            "freq_hz": float(self.freq_hz[i_freq]),
            "s_tilde": float(self.s_tilde[j_amp]),
            "S": self.S[j_amp, i_freq],
            "S_linear": self.S_linear[i_freq],
            "alpha": tuple(self.alpha[j_amp, i_freq]),
            "rho": tuple(self.rho[j_amp, i_freq]),
            "phi": tuple(self.phi[j_amp, i_freq]),
            "n_roots": tuple(int(n) for n in self.n_roots[j_amp, i_freq]),
            "sync_capable": tuple(bool(b) for b in self.sync_capable[j_amp, i_freq]),
            "superradiant": tuple(bool(b) for b in self.superradiant[j_amp, i_freq]),
            "error": self.errors.get((i_freq, j_amp)),
        }


def _run_row(args):
    """Evaluate one fixed-amplitude row in ascending frequency order."""
    p, c, omegas, s, policy = args
    n = omegas.size
    S_row = np.full((n, 2, 2), np.nan, dtype=complex)
    alpha_row = np.full((n, 2), np.nan)
    rho_row = np.full((n, 2), np.nan)
    phi_row = np.full((n, 2), np.nan)
    roots_row = np.zeros((n, 2), dtype=np.int64)
    stable_row = np.zeros((n, 2), dtype=bool)
    errors_row: list[tuple[int, str]] = []
    prev: tuple[float | None, float | None] = (None, None)
    for i, omega in enumerate(omegas):
        try:
            res = scattering_matrix(
                p, c, float(omega), s, policy=policy, prev_rho_sq=prev
            )
        except NlcError as exc:
            errors_row.append((i, f"{type(exc).__name__}: {exc}"))
            prev = (None, None)
            continue
        S_row[i] = res.S
        alpha_row[i] = res.alpha
        assert res.responses is not None
        rho_row[i] = [fr.rho for fr in res.responses]
        phi_row[i] = [fr.phi for fr in res.responses]
        roots_row[i] = [fr.n_real_roots for fr in res.responses]
        stable_row[i] = [fr.stable for fr in res.responses]
        prev = (res.responses[0].rho ** 2, res.responses[1].rho ** 2)
    return S_row, alpha_row, rho_row, phi_row, roots_row, stable_row, errors_row


def run_sweep(
    p: ModelParams,
    grid: GridSpec | None = None,
    policy: str = "continuation",
    workers: int = 1,
) -> SweepGrid:
    """Evaluate the S-matrix over the grid, one worker task per amplitude row.

    Per-cell failures are recorded in ``errors`` (cells stay NaN) rather than
    aborting the sweep.  Output tables are deterministic: identical inputs
    give bit-identical arrays regardless of ``workers``.
    """
    grid = grid or GridSpec.default()
    if policy not in ("continuation", "largest-stable"):
        raise InvalidParams(f"unknown branch policy: {policy!r}")
    c = build_coupling(p)
    omegas = 2.0 * math.pi * grid.freq_hz
    s_values = [forcing_from_normalized(p, st) for st in grid.s_tilde]
    S_linear = np.stack([background_matrix(c, p, w) for w in omegas])

    from . import __version__

    tasks = [(p, c, omegas, s, policy) for s in s_values]
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            rows = pool.map(_run_row, tasks)
    else:
        rows = [_run_row(t) for t in tasks]

    na, nf = len(s_values), omegas.size
    out = SweepGrid(
        freq_hz=grid.freq_hz,
        s_tilde=grid.s_tilde,
        params=p,
        coupling=c,
        policy=policy,
        S=np.empty((na, nf, 2, 2), dtype=complex),
        S_linear=S_linear,
        alpha=np.empty((na, nf, 2)),
        rho=np.empty((na, nf, 2)),
        phi=np.empty((na, nf, 2)),
        n_roots=np.empty((na, nf, 2), dtype=np.int64),
        sync_capable=np.empty((na, nf, 2), dtype=bool),
        superradiant=np.empty((na, nf, 2), dtype=bool),
        version=__version__,
    )
    for j, (S_row, alpha_row, rho_row, phi_row, roots_row, stable_row, errors_row) in enumerate(rows):
        out.S[j] = S_row
        out.alpha[j] = alpha_row
        out.rho[j] = rho_row
        out.phi[j] = phi_row
        out.n_roots[j] = roots_row
        out.sync_capable[j] = stable_row
        for i, msg in errors_row:
            out.errors[(i, j)] = msg
    out.superradiant = out.alpha < 0.0
    return out


def superradiance_contour(grid: SweepGrid, port: int) -> list[np.ndarray]:
    """alpha_port = 0 contours as polylines in (freq_hz, s_tilde) coordinates."""
    if port not in (1, 2):
        raise InvalidParams(f"port must be 1 or 2, got {port}")
    field_vals = grid.alpha[:, :, port - 1]
    return marching_squares(grid.freq_hz, grid.s_tilde, field_vals, level=0.0)


def marching_squares(
    xs: np.ndarray, ys: np.ndarray, values: np.ndarray, level: float = 0.0
) -> list[np.ndarray]:
    """Zero-level (``level``) contours of values[j, i] on the (xs[i], ys[j]) grid.

    Classic marching squares with linear interpolation along cell edges;
    saddle cells are disambiguated by the cell-center average.  Crossing
    points are keyed by the grid edge they lie on, so segments from adjacent
    cells share endpoints exactly and chain into polylines (open curves
    first, then closed loops).  Cells with NaN corners are skipped.

    Raises EmptyContour when the field has uniform sign (no crossing).
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    v = np.asarray(values, dtype=float) - level
    if v.shape != (ys.size, xs.size):
        raise InvalidParams(
            f"values shape {v.shape} does not match (len(ys), len(xs)) = "
            f"({ys.size}, {xs.size})"
        )

    finite = v[np.isfinite(v)]
    if finite.size == 0 or (finite > 0).all() or (finite <= 0).all():
        raise EmptyContour("field has uniform sign: no zero-level contour")

    # Crossing point on the edge from grid node (i0, j0) to (i1, j1).
    def edge_point(i0, j0, i1, j1):
        va, vb = v[j0, i0], v[j1, i1]
        t = va / (va - vb)
        x = xs[i0] + t * (xs[i1] - xs[i0])
        y = ys[j0] + t * (ys[j1] - ys[j0])
        return (x, y)

    # Segment endpoints are identified by their grid edge.  Keys are
    # canonicalized (sorted node pair) so adjacent cells sharing an edge
    # refer to the same key and the crossing point is computed exactly once.
    points: dict[tuple, tuple] = {}
    links: dict[tuple, list] = {}

    def add_segment(edge_a, edge_b):
        edge_a = tuple(sorted(edge_a))
        edge_b = tuple(sorted(edge_b))
        for edge in (edge_a, edge_b):
            if edge not in points:
                points[edge] = edge_point(*edge[0], *edge[1])
        links.setdefault(edge_a, []).append(edge_b)
        links.setdefault(edge_b, []).append(edge_a)

    for j in range(ys.size - 1):
        for i in range(xs.size - 1):
            corners = v[j, i], v[j, i + 1], v[j + 1, i + 1], v[j + 1, i]
            if not all(np.isfinite(corners)):
                continue
            # Bit per corner that lies strictly on the negative side.
            case = sum(1 << k for k, val in enumerate(corners) if val <= 0.0)
            if case in (0, 15):
                continue
            bottom = ((i, j), (i + 1, j))
            right = ((i + 1, j), (i + 1, j + 1))
            top = ((i + 1, j + 1), (i, j + 1))
            left = ((i, j + 1), (i, j))
            table = {
                1: [(left, bottom)],
                2: [(bottom, right)],
                3: [(left, right)],
                4: [(right, top)],
                6: [(bottom, top)],
                7: [(left, top)],
                8: [(top, left)],
                9: [(top, bottom)],
                11: [(top, right)],
                12: [(right, left)],
                13: [(right, bottom)],
                14: [(bottom, left)],
            }
            if case in (5, 10):
                center = sum(corners) / 4.0
                if case == 5:
                    segs = (
                        [(left, top), (bottom, right)]
                        if center <= 0.0
                        else [(left, bottom), (right, top)]
                    )
                else:
                    segs = (
                        [(bottom, left), (top, right)]
                        if center <= 0.0
                        else [(bottom, right), (top, left)]
                    )
            else:
                segs = table[case]
            for a, b in segs:
                add_segment(a, b)

    if not links:
        raise EmptyContour("sign changes only across NaN cells: no contour")

    # Chain segments: open paths from degree-1 nodes first, then loops.
    visited = set()
    polylines: list[np.ndarray] = []

    def walk(start):
        path = [start]
        visited.add(start)
        current = start
        while True:
            nxt = [n for n in links[current] if n not in visited]
            if not nxt:
                # Close the loop if the start is adjacent.
                if len(path) > 2 and start in links[current]:
                    path.append(start)
                break
            current = nxt[0]
            visited.add(current)
            path.append(current)
        return path

    keys = sorted(links.keys())
    for key in keys:
        if key in visited or len(links[key]) != 1:
            continue
        path = walk(key)
        polylines.append(np.array([points[k] for k in path]))
    for key in keys:
        if key not in visited:
            path = walk(key)
            polylines.append(np.array([points[k] for k in path]))
    return polylines
