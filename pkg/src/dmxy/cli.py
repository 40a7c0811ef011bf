"""Command-line front end: sweeps, probes, oracle checks, tabular output.

Exit codes: 0 on success, 1 when the oracle check finds a disagreement,
2 on invalid flags or domain errors.  All output is deterministic for
identical flags (and seed), independent of ``--workers``.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from . import __version__
from .fermion import energy_curvature, excitation_gap, ground_state, mode_table
from .model import ModelParams, Sector
from .oracle import MAX_SPIN_SITES, crosscheck, draw_params, jw_consistency_check
from .probes import (
    FIDELITY_DELTA,
    GP_DERIVATIVE_STEP,
    fidelity,
    geometric_phase,
    gp_derivative,
    scaling_study,
)
from .tables import SweepTable, _format_meta

__all__ = ["main", "entry"]

OBSERVABLES = ("energy", "gap", "min_lambda", "beta", "dbeta", "fidelity", "curvature")
_AXIS_FIELDS = {"lambda": "lam", "D": "D", "gamma": "gamma", "N": "N"}
_SECTORS = {s.value: s for s in Sector}

CHECK_ENERGY_TOL = 1e-9
CHECK_SPECTRUM_TOL = 1e-10
_CHECK_JW_MAX_N = 8  # full-spectrum check above this is slow; energies only

_CHECK_COLUMNS = (
    "N",
    "draw",
    "J",
    "gamma",
    "D",
    "lambda",
    "spin_energy",
    "analytic_energy",
    "abs_error",
    "spin_gap",
    "matched_sector",
    "bdg_error",
    "jw_error",
)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _params_from_args(args: argparse.Namespace) -> ModelParams:
    return ModelParams(J=args.J, gamma=args.gamma, D=args.D, lam=args.lam, N=args.N)


def _base_metadata(params: ModelParams, sector: Sector) -> dict:
    return {
        "J": params.J,
        "gamma": params.gamma,
        "D": params.D,
        "lambda": params.lam,
        "N": params.N,
        "sector": sector.value,
        "version": __version__,
    }


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise ValueError(f"{flag} expects a comma-separated integer list, got {text!r}") from None


def _parse_window(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"--window expects lo:hi, got {text!r}")
    return float(lo), float(hi)


# -- spectrum ---------------------------------------------------------------


def cmd_spectrum(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    sector = _SECTORS[args.sector]
    rows = tuple(
        (float(m.k), m.x, m.cos_theta, m.sin_theta, m.lambda_k)
        for m in mode_table(params, sector)
    )
    table = SweepTable(
        columns=("k", "x", "cos_theta", "sin_theta", "lambda_k"),
        rows=rows,
        metadata=_base_metadata(params, sector),
    )
    _emit(table.dumps(args.format), args.out)
    return 0


# -- sweep ------------------------------------------------------------------


def _evaluate_row(task: tuple[ModelParams, Sector, tuple[str, ...]]) -> tuple[float, ...]:
    """All requested observables at one parameter point (picklable worker)."""
    params, sector, names = task
    summary = None
    values: list[float] = []
    for name in names:
        if name in ("energy", "min_lambda"):
            if summary is None:
                summary = ground_state(params, sector)
            values.append(summary.energy if name == "energy" else summary.min_lambda)
        elif name == "gap":
            values.append(excitation_gap(params))
        elif name == "beta":
            values.append(geometric_phase(params))
        elif name == "dbeta":
            values.append(gp_derivative(params, GP_DERIVATIVE_STEP))
        elif name == "fidelity":
            values.append(fidelity(params, FIDELITY_DELTA))
        elif name == "curvature":
            values.append(energy_curvature(params))
        else:  # pragma: no cover - filtered before dispatch
            raise ValueError(f"unknown observable {name!r}")
    return tuple(values)


def _axis_values(axis: str, lo: float, hi: float, steps: int) -> list[float | int]:
    if steps < 2:
        raise ValueError(f"--steps must be at least 2, got {steps}")
    if not (lo < hi):
        raise ValueError(f"sweep needs --lo < --hi, got ({lo}, {hi})")
    grid = [lo + (hi - lo) * i / (steps - 1) for i in range(steps - 1)]
    grid.append(hi)  # land on the endpoint exactly
    if axis != "N":
        return grid
    sizes = [int(round(v)) for v in grid]
    if any(n < 2 for n in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(
            f"axis N grid must round to strictly increasing integers >= 2, got {sizes}"
        )
    return sizes


def cmd_sweep(args: argparse.Namespace) -> int:
    axis = args.axis
    names = tuple(piece.strip() for piece in args.observables.split(",") if piece.strip())
    unknown = [name for name in names if name not in OBSERVABLES]
    if unknown:
        raise ValueError(
            f"unknown observables {unknown}; choose from {', '.join(OBSERVABLES)}"
        )
    if not names:
        raise ValueError("--observables must name at least one observable")
    if args.workers < 1:
        raise ValueError(f"--workers must be at least 1, got {args.workers}")

    template = _params_from_args(args)
    sector = _SECTORS[args.sector]
    field = _AXIS_FIELDS[axis]
    values = _axis_values(axis, args.lo, args.hi, args.steps)
    tasks = [(replace(template, **{field: v}), sector, names) for v in values]

    if args.workers == 1:
        results = [_evaluate_row(task) for task in tasks]
    else:
        # pure per-point work; map() preserves submission order
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_evaluate_row, tasks, chunksize=8))

    metadata = _base_metadata(template, sector)
    metadata.update({"axis": axis, "lo": args.lo, "hi": args.hi, "steps": args.steps})
    table = SweepTable(
        columns=(axis, *names),
        rows=tuple((float(v), *row) for v, row in zip(values, results)),
        metadata=metadata,
    )
    _emit(table.dumps(args.format), args.out)
    return 0


# -- check ------------------------------------------------------------------


def _format_cell(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


def _check_text(metadata: dict, rows: list[tuple], fmt: str) -> str:
    if fmt == "csv":
        lines = [f"# {key} = {_format_meta(metadata[key])}" for key in sorted(metadata)]
        lines.append(",".join(_CHECK_COLUMNS))
        lines.extend(",".join(_format_cell(cell) for cell in row) for row in rows)
        return "\n".join(lines) + "\n"
    payload = {
        "metadata": {key: metadata[key] for key in sorted(metadata)},
        "columns": list(_CHECK_COLUMNS),
        "rows": [list(row) for row in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def cmd_check(args: argparse.Namespace) -> int:
    sizes = _parse_int_list(args.N, "--N")
    if not sizes:
        raise ValueError("--N must list at least one chain length")
    for n in sizes:
        if n < 2 or n > MAX_SPIN_SITES:
            raise ValueError(f"check supports 2 <= N <= {MAX_SPIN_SITES}, got {n}")
    if args.draws < 1:
        raise ValueError(f"--draws must be at least 1, got {args.draws}")
    if not (0 <= args.seed < 2**64):
        raise ValueError(f"--seed must be a 64-bit unsigned integer, got {args.seed}")

    rng = np.random.Generator(np.random.PCG64(args.seed))
    rows: list[tuple] = []
    worst_energy = (-1.0, None)  # (abs_error, params)
    worst_jw = (-1.0, None)
    for n in sizes:
        for draw in range(args.draws):
            params = draw_params(rng, n)
            report = crosscheck(params)
            if n <= _CHECK_JW_MAX_N:
                jw_error: float | None = jw_consistency_check(params).bdg_multiset_error
                if jw_error > worst_jw[0]:
                    worst_jw = (jw_error, params)
            else:
                jw_error = None
            if report.abs_error > worst_energy[0]:
                worst_energy = (report.abs_error, params)
            rows.append(
                (
                    n,
                    draw,
                    params.J,
                    params.gamma,
                    params.D,
                    params.lam,
                    report.spin_ground_energy,
                    report.analytic_ground_energy,
                    report.abs_error,
                    report.spin_gap,
                    report.matched_sector.value,
                    report.bdg_multiset_error,
                    jw_error,
                )
            )

    metadata = {
        "N": args.N,
        "draws": args.draws,
        "seed": args.seed,
        "generator": "numpy PCG64",
        "version": __version__,
    }
    _emit(_check_text(metadata, rows, args.format), args.out)

    passed = worst_energy[0] <= CHECK_ENERGY_TOL and (
        worst_jw[1] is None or worst_jw[0] <= CHECK_SPECTRUM_TOL
    )
    verdict = "PASS" if passed else "FAIL"
    print(
        f"check: {verdict} ({len(rows)} draws; worst energy error "
        f"{worst_energy[0]:.3e}, worst spectrum error "
        f"{worst_jw[0] if worst_jw[1] is not None else float('nan'):.3e})",
        file=sys.stderr,
    )
    if not passed:
        offender = (
            worst_energy[1] if worst_energy[0] > CHECK_ENERGY_TOL else worst_jw[1]
        )
        print(f"check: worst offender {offender}", file=sys.stderr)
        return 1
    return 0


# -- scaling ----------------------------------------------------------------


def cmd_scaling(args: argparse.Namespace) -> int:
    sizes = _parse_int_list(args.sizes, "--sizes")
    window = _parse_window(args.window)
    fit = scaling_study(args.J, args.gamma, args.D, sizes, window, args.grid_points)

    metadata = {
        "J": args.J,
        "gamma": args.gamma,
        "D": args.D,
        "window_lo": window[0],
        "window_hi": window[1],
        "grid_points": args.grid_points,
        "version": __version__,
    }
    payload = {
        "metadata": metadata,
        "sizes": list(fit.sizes),
        "peak_locations": list(fit.peak_locations),
        "peak_heights": list(fit.peak_heights),
        "log_fit_slope": fit.log_fit_slope,
        "log_fit_r2": fit.log_fit_r2,
    }
    fit_json = json.dumps(payload, indent=2) + "\n"
    table = SweepTable(
        columns=("N", "peak_lambda", "peak_height"),
        rows=tuple(
            (float(n), loc, h)
            for n, loc, h in zip(fit.sizes, fit.peak_locations, fit.peak_heights)
        ),
        metadata=metadata,
    )
    if args.out is None:
        sys.stdout.write(fit_json)
        sys.stdout.write("\n")
        sys.stdout.write(table.to_csv())
    else:
        _emit(fit_json, args.out)
        _emit(table.to_csv(), args.out + ".csv")
    return 0


# -- ground -----------------------------------------------------------------


def cmd_ground(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    sector = _SECTORS[args.sector]
    summary = ground_state(params, sector)
    filled = sum(summary.occupations)
    if args.format == "json":
        payload = {
            "metadata": _base_metadata(params, sector),
            "energy": summary.energy,
            "min_abs_lambda": summary.min_abs_lambda,
            "min_lambda": summary.min_lambda,
            "degenerate_modes": summary.degenerate_modes,
            "filled": filled,
            "occupations": [1 if occ else 0 for occ in summary.occupations],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        metadata = _base_metadata(params, sector)
        lines = [f"# {key} = {_format_meta(metadata[key])}" for key in sorted(metadata)]
        lines.append("energy,min_abs_lambda,min_lambda,filled,degenerate_modes")
        lines.append(
            ",".join(
                (
                    f"{summary.energy:.17g}",
                    f"{summary.min_abs_lambda:.17g}",
                    f"{summary.min_lambda:.17g}",
                    str(filled),
                    str(summary.degenerate_modes),
                )
            )
        )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if summary.min_lambda < 0.0:
        print(
            "ground: note: negative quasiparticle energies present; "
            "the bare vacuum is not the lowest state in this regime",
            file=sys.stderr,
        )
    return 0


# -- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    physics = argparse.ArgumentParser(add_help=False)
    physics.add_argument("--J", type=float, default=1.0, help="exchange coupling")
    physics.add_argument("--gamma", type=float, default=1.0, help="XY anisotropy")
    physics.add_argument("--D", type=float, default=0.0, help="DM strength")
    physics.add_argument(
        "--lambda", dest="lam", type=float, default=1.0, help="transverse field"
    )
    physics.add_argument(
        "--sector",
        choices=sorted(_SECTORS),
        default=Sector.CENTERED.value,
        help="momentum grid / parity sector",
    )

    io = argparse.ArgumentParser(add_help=False)
    io.add_argument("--format", choices=("csv", "json"), default="csv")
    io.add_argument("--out", default=None, help="output path (default: stdout)")
    io.add_argument(
        "--workers", type=int, default=1, help="worker processes (sweep only)"
    )

    parser = argparse.ArgumentParser(
        prog="dmxy",
        description="Free-fermion XY chain with DM interaction: sweeps and checks.",
    )
    parser.add_argument("--version", action="version", version=f"dmxy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "spectrum", parents=[physics, io], help="per-mode table at one point"
    )
    p.add_argument("--N", type=int, default=100, help="chain length")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser(
        "sweep", parents=[physics, io], help="observables along one parameter axis"
    )
    p.add_argument("--N", type=int, default=100, help="chain length")
    p.add_argument("--axis", choices=sorted(_AXIS_FIELDS), required=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True, help="grid points (>= 2)")
    p.add_argument(
        "--observables",
        default=",".join(OBSERVABLES),
        help=f"comma list from: {', '.join(OBSERVABLES)}",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser(
        "check", parents=[physics, io], help="brute-force oracle comparison"
    )
    p.add_argument("--N", default="4,6,8,10", help="comma list of chain lengths (<= 14)")
    p.add_argument("--draws", type=int, default=50, help="random draws per length")
    p.add_argument("--seed", type=int, default=42, help="64-bit RNG seed")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser(
        "scaling", parents=[physics, io], help="derivative-peak finite-size scaling"
    )
    p.add_argument("--sizes", default="51,101,201,401", help="comma list of lengths")
    p.add_argument("--window", default="0.8:1.2", help="field search window lo:hi")
    p.add_argument("--grid-points", type=int, default=41, help="coarse scan points")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser(
        "ground", parents=[physics, io], help="sector ground-state summary"
    )
    p.add_argument("--N", type=int, default=100, help="chain length")
    p.set_defaults(func=cmd_ground)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())
