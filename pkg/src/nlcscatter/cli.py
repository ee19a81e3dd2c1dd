"""Command-line interface: point/sweep/oracle/validate + CSV/JSON emission.

Configuration is a flat JSON file.  Frequencies are given in Hz and
converted to rad/s at this boundary only.  The rates nu and gamma are
ambiguous without a unit, so they must carry an explicit tag:

    {"f0_hz": 1820.0,
     "nu":    {"value": 0.004, "unit": "fraction_of_omega0"},
     "gamma": {"value": 0.008, "unit": "fraction_of_omega0"},
     "kappa": 1.0, "sigma": 0.6, "epsilon": 0.3,
     "grid": {"freq_hz": {"min": 1740, "max": 1900, "n": 161},
              "s_tilde": {"min": 0.1, "max": 10, "n": 61, "spacing": "log"}},
     "branch_policy": "continuation"}

Exit codes: 0 ok, 1 error, 2 ok-with-warnings (branch-ambiguous cells),
3 out-of-validity (unsynchronized oracle point).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, EmptyContour, NlcError
from .forced_response import ForcingPoint
from .model import ModelParams, build_coupling, validate_conditions
from .scattering import forcing_from_normalized, scattering_matrix
from .sweep import GridSpec, SweepGrid, run_sweep, superradiance_contour
from .timedomain import SimConfig, scattering_estimate, simulate_forced

__all__ = ["RunConfig", "main", "CSV_COLUMNS"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_WARNINGS = 2
EXIT_OUT_OF_VALIDITY = 3

ORACLE_TOL = 1e-3

RATE_UNITS = ("fraction_of_omega0", "rad_per_s")

CSV_COLUMNS = [
    "freq_hz",
    "s_tilde",
    "re_s11",
    "im_s11",
    "re_s12",
    "im_s12",
    "re_s21",
    "im_s21",
    "re_s22",
    "im_s22",
    "abs_db_s11",
    "abs_db_s12",
    "abs_db_s21",
    "abs_db_s22",
    "alpha1",
    "alpha2",
    "n_roots_1",
    "n_roots_2",
    "sync_capable",
    "error",
]

DB_CONVENTION = "abs_db = 20*log10(|S_ij|) (amplitude ratio)"


def _fmt(x: float) -> str:
    """Serialize a float with 17 significant digits (lossless round-trip)."""
    return format(float(x), ".17g")


def _rate(raw: object, name: str, omega0: float) -> float:
    """Parse a unit-tagged rate into rad/s."""
    if not isinstance(raw, dict) or "value" not in raw or "unit" not in raw:
        raise ConfigError(
            f"{name}: missing unit tag; use {{'value': x, 'unit': "
            f"'fraction_of_omega0'|'rad_per_s'}}"
        )
    unit = raw["unit"]
    value = float(raw["value"])
    if unit == "fraction_of_omega0":
        return value * omega0
    if unit == "rad_per_s":
        return value
    raise ConfigError(f"{name}: unknown unit {unit!r}, expected one of {RATE_UNITS}")


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration (raw dict kept for lossless echo)."""

    raw: dict
    params: ModelParams
    grid: GridSpec
    branch_policy: str
    sim: SimConfig

    @staticmethod
    def from_dict(raw: dict) -> "RunConfig":
        for key in ("f0_hz", "nu", "gamma", "kappa", "sigma", "epsilon"):
            if key not in raw:
                raise ConfigError(f"missing required config key: {key}")
        omega0 = 2.0 * math.pi * float(raw["f0_hz"])
        try:
            params = ModelParams(
                omega0=omega0,
                nu=_rate(raw["nu"], "nu", omega0),
                kappa=float(raw["kappa"]),
                gamma=_rate(raw["gamma"], "gamma", omega0),
                sigma=float(raw["sigma"]),
                epsilon=float(raw["epsilon"]),
            )
        except NlcError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid parameter value: {exc}") from exc

        grid_raw = raw.get("grid")
        if grid_raw is None:
            grid = GridSpec.default()
        else:
            try:
                f = grid_raw["freq_hz"]
                a = grid_raw["s_tilde"]
                grid = GridSpec.from_ranges(
                    float(f["min"]),
                    float(f["max"]),
                    int(f["n"]),
                    float(a["min"]),
                    float(a["max"]),
                    int(a["n"]),
                    log_amp=a.get("spacing", "log") == "log",
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"invalid grid spec: {exc}") from exc

        policy = raw.get("branch_policy", "continuation")
        if policy not in ("continuation", "largest-stable"):
            raise ConfigError(f"unknown branch_policy: {policy!r}")

        sim_raw = raw.get("sim", {})
        if not isinstance(sim_raw, dict):
            raise ConfigError("sim section must be an object")
        sim = SimConfig(
            dt=sim_raw.get("dt"),
            t_transient=sim_raw.get("t_transient"),
            t_measure=sim_raw.get("t_measure"),
        )
        return RunConfig(raw=raw, params=params, grid=grid, branch_policy=policy, sim=sim)

    @staticmethod
    def load(path: str | Path) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        return RunConfig.from_dict(raw)


def _derived_dict(cfg: RunConfig) -> dict:
    p = cfg.params
    c = build_coupling(p)
    a0 = math.sqrt(p.nu / p.kappa) if p.nu > 0 else None
    return {
        "omega0_rad_s": p.omega0,
        "nu_rad_s": p.nu,
        "gamma_rad_s": p.gamma,
        "kappa": p.kappa,
        "sigma": p.sigma,
        "epsilon": p.epsilon,
        "g": c.g,
        "h": c.h,
        "D": [float(d) for d in c.D],
        "gamma_i_rad_s": c.gamma_i,
        "mu1": c.mu1,
        "mu2": c.mu2,
        "quality_ratio": abs(c.mu2) / abs(c.mu1),
        "limit_cycle_amplitude": a0,
    }


def _db(x: float) -> float:
    return 20.0 * math.log10(x) if x > 0 else float("-inf")


def _print_matrix(name: str, M: np.ndarray, out) -> None:
    print(f"{name}:", file=out)
    for i in (0, 1):
        cells = []
        for j in (0, 1):
            z = M[i, j]
            cells.append(f"{z.real:+.9e}{z.imag:+.9e}j")
        print("    " + "   ".join(cells), file=out)


def cmd_point(cfg: RunConfig, omega_hz: float, s_tilde: float, out=None) -> int:
    out = out if out is not None else sys.stdout
    p = cfg.params
    c = build_coupling(p)
    omega = 2.0 * math.pi * omega_hz
    s = forcing_from_normalized(p, s_tilde)
    res = scattering_matrix(p, c, omega, s, policy=cfg.branch_policy)

    print(f"point: omega/2pi = {omega_hz} Hz, s_tilde = {s_tilde} (s = {s:.9g})", file=out)
    _print_matrix("S_linear", res.S_linear, out)
    _print_matrix("S_nonlinear", res.S_nonlinear, out)
    _print_matrix("S", res.S, out)
    print("|S| (dB) / phase (rad):", file=out)
    for i in (0, 1):
        cells = []
        for j in (0, 1):
            z = res.S[i, j]
            cells.append(f"{_db(abs(z)):+9.4f} dB /{np.angle(z):+8.5f}")
        print("    " + "   ".join(cells), file=out)
    assert res.responses is not None
    for j, fr in enumerate(res.responses, start=1):
        print(
            f"port {j}: rho = {fr.rho:.9g}, phi = {fr.phi:.9g} rad, "
            f"n_roots = {fr.n_real_roots}, stable = {fr.stable}",
            file=out,
        )
    print(
        f"alpha = ({res.alpha[0]:.9g}, {res.alpha[1]:.9g}), "
        f"superradiant = ({res.superradiant[0]}, {res.superradiant[1]})",
        file=out,
    )
    if res.warnings:
        for w in res.warnings:
            print(f"warning: {w}", file=out)
        return EXIT_WARNINGS
    return EXIT_OK


def write_sweep_csv(grid: SweepGrid, path: Path) -> None:
    """Long-format CSV, one row per (s_tilde, freq) cell, fixed column order."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# {DB_CONVENTION}\n")
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for j, st in enumerate(grid.s_tilde):
            for i, fhz in enumerate(grid.freq_hz):
                S = grid.S[j, i]
                err = grid.errors.get((i, j), "")
                row = [_fmt(fhz), _fmt(st)]
                for a, b in ((0, 0), (0, 1), (1, 0), (1, 1)):
                    row += [_fmt(S[a, b].real), _fmt(S[a, b].imag)]
                for a, b in ((0, 0), (0, 1), (1, 0), (1, 1)):
                    mag = abs(S[a, b])
                    row.append(_fmt(_db(mag)) if not math.isnan(mag) else "nan")
                row += [_fmt(grid.alpha[j, i, 0]), _fmt(grid.alpha[j, i, 1])]
                row += [str(int(grid.n_roots[j, i, 0])), str(int(grid.n_roots[j, i, 1]))]
                row.append("true" if bool(grid.sync_capable[j, i].all()) else "false")
                row.append(err)
                writer.writerow(row)


def write_sweep_meta(cfg: RunConfig, grid: SweepGrid, path: Path) -> None:
    meta = {
        "version": __version__,
        "config": cfg.raw,
        "derived": _derived_dict(cfg),
        "grid": {
            "freq_hz": [float(x) for x in grid.freq_hz],
            "s_tilde": [float(x) for x in grid.s_tilde],
        },
        "branch_policy": grid.policy,
        "csv_columns": CSV_COLUMNS,
        "db_convention": DB_CONVENTION,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")


def write_contours(grid: SweepGrid, path: Path) -> None:
    payload: dict = {
        "axes": {
            "freq_hz": [float(x) for x in grid.freq_hz],
            "s_tilde": [float(x) for x in grid.s_tilde],
        }
    }
    for port in (1, 2):
        try:
            lines = superradiance_contour(grid, port)
            payload[f"alpha{port}"] = [
                [[float(x), float(y)] for x, y in line] for line in lines
            ]
        except EmptyContour:
            payload[f"alpha{port}"] = []
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def cmd_sweep(cfg: RunConfig, workers: int, out_dir: Path, out=None) -> int:
    out = out if out is not None else sys.stdout
    grid = run_sweep(cfg.params, cfg.grid, policy=cfg.branch_policy, workers=workers)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_sweep_csv(grid, out_dir / "sweep.csv")
    write_sweep_meta(cfg, grid, out_dir / "sweep_meta.json")
    write_contours(grid, out_dir / "contours.json")
    n_cells = grid.freq_hz.size * grid.s_tilde.size
    print(
        f"sweep: {grid.freq_hz.size} x {grid.s_tilde.size} grid "
        f"({n_cells} cells, {len(grid.errors)} failed) -> {out_dir}",
        file=out,
    )
    multi = int(np.sum(grid.n_roots > 1))
    if grid.errors:
        print(f"warning: {len(grid.errors)} cells failed (see 'error' column)", file=out)
        return EXIT_WARNINGS
    if multi:
        print(f"warning: {multi} port-cells have multiple amplitude roots", file=out)
        return EXIT_WARNINGS
    return EXIT_OK


def cmd_oracle(
    cfg: RunConfig,
    omega_hz: float,
    s_tilde: float,
    port: int,
    timeseries: Path | None = None,
    out=None,
) -> int:
    out = out if out is not None else sys.stdout
    p = cfg.params
    c = build_coupling(p)
    omega = 2.0 * math.pi * omega_hz
    s = forcing_from_normalized(p, s_tilde)
    f = ForcingPoint(omega=omega, s=s, port=port)

    res = scattering_matrix(p, c, omega, s, policy=cfg.branch_policy)
    assert res.responses is not None
    fr = res.responses[port - 1]
    sim = simulate_forced(p, c, f, cfg.sim)

    rho_err = abs(sim.rho_hat - fr.rho) / fr.rho if fr.rho else abs(sim.rho_hat)
    phi_err = abs((sim.phi_hat - fr.phi + math.pi) % (2 * math.pi) - math.pi)
    col_analytic = res.S[:, port - 1]
    col_err = float(
        np.linalg.norm(sim.s_column - col_analytic) / np.linalg.norm(col_analytic)
    )

    print(
        f"oracle: omega/2pi = {omega_hz} Hz (detuning {fr.detuning:.6g} rad/s), "
        f"s_tilde = {s_tilde}, port {port}",
        file=out,
    )
    print(
        f"  analytic : rho = {fr.rho:.9g}, phi = {fr.phi:.9g}, "
        f"n_roots = {fr.n_real_roots}, stable = {fr.stable}",
        file=out,
    )
    print(
        f"  simulated: rho = {sim.rho_hat:.9g}, phi = {sim.phi_hat:.9g}, "
        f"residual_power = {sim.residual_power:.3e}, sync = {sim.sync}",
        file=out,
    )
    print(
        f"  rel errors: rho {rho_err:.3e}, phi {phi_err:.3e} rad, "
        f"S column {col_err:.3e}",
        file=out,
    )

    if timeseries is not None:
        write_timeseries_csv(sim, timeseries)
        print(f"  time series -> {timeseries}", file=out)

    if not sim.sync:
        print("  verdict: unsynchronized (outside analytic validity)", file=out)
        return EXIT_OUT_OF_VALIDITY
    ok = rho_err < ORACLE_TOL and phi_err < ORACLE_TOL and col_err < ORACLE_TOL
    print(f"  verdict: {'agree' if ok else 'DISAGREE'} at tolerance {ORACLE_TOL}", file=out)
    return EXIT_OK if ok else EXIT_ERROR


def write_timeseries_csv(sim, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["t", "re_a", "im_a", "re_s_out_1", "im_s_out_1", "re_s_out_2", "im_s_out_2"]
        )
        for k in range(sim.t.size):
            writer.writerow(
                [
                    _fmt(sim.t[k]),
                    _fmt(sim.a[k].real),
                    _fmt(sim.a[k].imag),
                    _fmt(sim.s_out_series[0, k].real),
                    _fmt(sim.s_out_series[0, k].imag),
                    _fmt(sim.s_out_series[1, k].real),
                    _fmt(sim.s_out_series[1, k].imag),
                ]
            )


def cmd_validate(cfg: RunConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    c = build_coupling(cfg.params)
    report = validate_conditions(c, cfg.params)
    d = _derived_dict(cfg)
    print(f"g = {d['g']:.9g}, h = {d['h']:.9g}, D = ({d['D'][0]:.9g}, {d['D'][1]:.9g})", file=out)
    print(f"gamma_i/gamma = {c.gamma_i / cfg.params.gamma:.9g}", file=out)
    print(f"mu1 = {c.mu1:.9g}, mu2 = {c.mu2:.9g}", file=out)
    print(f"condition (I) residual          : {report.condition1_residual:.3e}", file=out)
    print(f"matched background unitarity    : {report.matched_unitarity_defect:.3e}", file=out)
    print(f"decay relation |D.D - 2(g-gi)|  : {report.decay_relation_residual:.3e}", file=out)
    print(f"spectral reconstruction residual: {report.reconstruction_residual:.3e}", file=out)
    print(
        f"quality ratio |mu2|/|mu1|       : {report.quality_ratio:.6g}"
        + ("  (degraded)" if report.quality_degraded else ""),
        file=out,
    )
    print(f"verdict: {'pass' if report.passed else 'FAIL'}", file=out)
    return EXIT_OK if report.passed else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlcscatter",
        description="Amplitude-dependent scattering from a self-oscillating cavity mode",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", required=True, help="path to JSON run config")

    sp = sub.add_parser("point", help="evaluate the S-matrix at one (omega, s_tilde)")
    add_common(sp)
    sp.add_argument("--omega-hz", type=float, required=True)
    sp.add_argument("--s-tilde", type=float, required=True)

    sp = sub.add_parser("sweep", help="evaluate the full grid and write CSV/JSON")
    add_common(sp)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument(
        "--out",
        default=None,
        help="output directory (default: config output_dir, else ./out)",
    )

    sp = sub.add_parser("oracle", help="compare analytic and time-domain solutions")
    add_common(sp)
    sp.add_argument("--omega-hz", type=float, required=True)
    sp.add_argument("--s-tilde", type=float, required=True)
    sp.add_argument("--port", type=int, choices=(1, 2), required=True)
    sp.add_argument("--timeseries", default=None, help="optional CSV dump path")

    sp = sub.add_parser("validate", help="check the coupling-construction identities")
    add_common(sp)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.load(args.config)
        if args.command == "point":
            return cmd_point(cfg, args.omega_hz, args.s_tilde)
        if args.command == "sweep":
            out_dir = args.out if args.out is not None else cfg.raw.get("output_dir", "out")
            return cmd_sweep(cfg, args.workers, Path(out_dir))
        if args.command == "oracle":
            ts = Path(args.timeseries) if args.timeseries else None
            return cmd_oracle(cfg, args.omega_hz, args.s_tilde, args.port, ts)
        if args.command == "validate":
            return cmd_validate(cfg)
        raise AssertionError(f"unhandled command {args.command}")
    except NlcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: IO failure: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
