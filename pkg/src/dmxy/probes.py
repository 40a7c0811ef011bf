"""Quantum-phase-transition probes: geometric phase, fidelity, scaling.

All probes are functions of the Bogoliubov angles over the centered grid
alone.  Since the angles never depend on the DM strength, neither do the
probes -- bitwise.  The only D-sensitive field is the ``valid_vacuum`` flag,
which records whether the quasiparticle spectrum is entirely non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import ModelParams, Sector, bogoliubov_angle, build_kgrid, dispersion

__all__ = [
    "ProbeResult",
    "ScalingFit",
    "evaluate_probes",
    "fidelity",
    "geometric_phase",
    "gp_derivative",
    "locate_peak",
    "scaling_study",
]

# step sizes used by the CLI and by locate_peak's scan objective
GP_DERIVATIVE_STEP = 1e-4
FIDELITY_DELTA = 1e-2
PEAK_TOLERANCE = 1e-6

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ProbeResult:
    """Bundle of the scalar probes at one coupling point."""

    beta: float
    beta_per_site: float
    dbeta_dlambda: float
    fidelity: float
    params: ModelParams
    valid_vacuum: bool


@dataclass(frozen=True)
class ScalingFit:
    """Finite-size scaling of the phase-derivative peak.

    ``peak_heights`` are per-site derivative magnitudes |d beta/d lambda|/N
    at the located peaks; ``log_fit_slope`` / ``log_fit_r2`` describe the
    least-squares line of height against ln N.
    """

    sizes: tuple[int, ...]
    peak_locations: tuple[float, ...]
    peak_heights: tuple[float, ...]
    log_fit_slope: float
    log_fit_r2: float


def geometric_phase(params: ModelParams) -> float:
    """Ground-state geometric phase accumulated under a global spin rotation.

    beta = sum over k > 0 of pi * (1 - cos theta_k), over the centered grid.
    Reads only the Bogoliubov angles, so the value is bitwise independent
    of the DM strength.
    """
    terms = []
    for k in build_kgrid(params.N, Sector.CENTERED):
        if k > 0:
            cos_t, _ = bogoliubov_angle(params, k)
            terms.append(math.pi * (1.0 - cos_t))
    return math.fsum(terms)


def gp_derivative(params: ModelParams, h: float) -> float:
    """Central difference d beta / d lambda with step ``h`` (> 0)."""
    if h <= 0.0:
        raise ValueError(f"step h must be positive, got {h}")
    beta_plus = geometric_phase(replace(params, lam=params.lam + h))
    beta_minus = geometric_phase(replace(params, lam=params.lam - h))
    return (beta_plus - beta_minus) / (2.0 * h)


def _angles_positive_k(params: ModelParams) -> list[float]:
    out = []
    for k in build_kgrid(params.N, Sector.CENTERED):
        if k > 0:
            cos_t, sin_t = bogoliubov_angle(params, k)
            out.append(math.atan2(sin_t, cos_t))
    return out


def fidelity(params: ModelParams, delta: float) -> float:
    """Ground-state overlap between fields lam and lam + delta.

    F = prod over k > 0 of |cos((theta_k(lam) - theta_k(lam+delta))/2)|.
    Equals 1.0 exactly at delta = 0 and is symmetric under
    (lam, delta) -> (lam + delta, -delta).
    """
    here = _angles_positive_k(params)
    there = _angles_positive_k(replace(params, lam=params.lam + delta))
    return math.prod(
        abs(math.cos(0.5 * (t1 - t2))) for t1, t2 in zip(here, there)
    )


def evaluate_probes(
    params: ModelParams,
    h: float = GP_DERIVATIVE_STEP,
    delta: float = FIDELITY_DELTA,
) -> ProbeResult:
    """Evaluate all scalar probes at one parameter point."""
    beta = geometric_phase(params)
    min_lambda = min(
        dispersion(params, k) for k in build_kgrid(params.N, Sector.CENTERED)
    )
    return ProbeResult(
        beta=beta,
        beta_per_site=beta / params.N,
        dbeta_dlambda=gp_derivative(params, h),
        fidelity=fidelity(params, delta),
        params=params,
        valid_vacuum=(min_lambda >= 0.0),
    )


def _golden_max(f, lo: float, hi: float, tol: float):
    """Golden-section maximization of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
    mid = 0.5 * (a + b)
    return mid, f(mid)


def locate_peak(
    params: ModelParams,
    window: tuple[float, float],
    grid_points: int = 41,
    N: int | None = None,
) -> tuple[float, float]:
    """Locate the field value where the phase derivative peaks.

    Scans the per-site derivative magnitude |d beta/d lambda| / N on a
    uniform grid over ``window`` and refines the best bracket by
    golden-section search down to a 1e-6 tolerance in lambda.  Returns
    (location, height).  ``N`` overrides the chain length in ``params``.
    Deterministic, and independent of the DM strength bit for bit.
    """
    lo, hi = window
    if not (lo < hi):
        raise ValueError(f"window must satisfy lo < hi, got ({lo}, {hi})")
    if grid_points < 3:
        raise ValueError(f"grid_points must be at least 3, got {grid_points}")
    n = params.N if N is None else N
    base = replace(params, N=n)

    def height(lam: float) -> float:
        return abs(gp_derivative(replace(base, lam=lam), GP_DERIVATIVE_STEP)) / n

    grid = [lo + (hi - lo) * i / (grid_points - 1) for i in range(grid_points - 1)]
    grid.append(hi)
    values = [height(x) for x in grid]
    best = max(range(grid_points), key=lambda i: (values[i], -i))
    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, grid_points - 1)]
    return _golden_max(height, left, right, PEAK_TOLERANCE)


def scaling_study(
    J: float,
    gamma: float,
    D: float,
    sizes: list[int],
    window: tuple[float, float],
    grid_points: int = 41,
) -> ScalingFit:
    """Track the derivative peak across chain sizes and fit it against ln N.

    ``sizes`` must hold at least three strictly increasing lengths.  For
    each N the peak of the per-site phase derivative inside ``window`` is
    located; the heights are then fit against ln N by least squares and the
    fit quality is reported as R^2.
    """
    if len(sizes) < 3:
        raise ValueError(f"need at least 3 sizes for a scaling fit, got {len(sizes)}")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be strictly increasing, got {sizes}")
    lo, hi = window
    template = ModelParams(J=J, gamma=gamma, D=D, lam=0.5 * (lo + hi), N=sizes[0])

    locations, heights = [], []
    for n in sizes:
        loc, height = locate_peak(template, window, grid_points, N=n)
        locations.append(loc)
        heights.append(height)

    log_n = np.log(np.asarray(sizes, dtype=float))
    y = np.asarray(heights)
    slope, intercept = np.polyfit(log_n, y, 1)
    residual = y - (slope * log_n + intercept)
    ss_res = float(np.sum(residual**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 and ss_res == 0.0 else 1.0 - ss_res / ss_tot if ss_tot else 0.0

    return ScalingFit(
        sizes=tuple(sizes),
        peak_locations=tuple(locations),
        peak_heights=tuple(heights),
        log_fit_slope=float(slope),
        log_fit_r2=float(r2),
    )
