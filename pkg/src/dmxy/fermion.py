"""Free-fermion mode tables and ground-state assembly.

The chain decouples into independent quasiparticle modes; the many-body
energy of an occupation pattern {n_k} is sum_k Lambda_k (n_k - 1/2).  The
lowest state fills exactly the modes with Lambda_k < 0 (ties at zero stay
empty).  In the parity-resolved sectors of the periodic spin chain the
fermion-number parity is constrained, and the constrained minimum may
differ from the unconstrained one by one flipped mode; ``ground_state``
handles that bookkeeping, including the parity carried by the Bogoliubov
vacuum itself at the self-conjugate momenta x = 0 and x = pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .model import (
    KMode,
    ModelParams,
    Sector,
    _dispersion_parts,
    _terms,
    bogoliubov_angle,
    build_kgrid,
    dispersion,
    momentum,
)

__all__ = [
    "GroundStateSummary",
    "energy_curvature",
    "excitation_gap",
    "ground_state",
    "mode_table",
]


@dataclass(frozen=True)
class GroundStateSummary:
    """Occupation pattern and energy of the lowest state of one sector.

    Attributes
    ----------
    occupations : tuple of bool
        Quasiparticle occupation per mode, aligned with the ascending
        momentum grid of the sector.
    energy : float
        sum_k Lambda_k (n_k - 1/2) for the stored occupations.
    min_abs_lambda : float
        Smallest |Lambda_k|; the excitation gap of the sector.
    min_lambda : float
        Smallest signed Lambda_k.  Negative values flag the regime where
        the bare quasiparticle vacuum is no longer the lowest state.
    sector : Sector
        Which grid/parity rule produced the summary.
    degenerate_modes : int
        Number of modes flagged as exactly gapless.
    """

    occupations: tuple[bool, ...]
    energy: float
    min_abs_lambda: float
    min_lambda: float
    sector: Sector
    degenerate_modes: int


def mode_table(params: ModelParams, sector: Sector) -> list[KMode]:
    """Solve every mode of ``sector``: one ``KMode`` per grid label, ascending."""
    rows = []
    for k in build_kgrid(params.N, sector):
        cos_t, sin_t = bogoliubov_angle(params, k)
        a, b, _ = _terms(params, k)
        rows.append(
            KMode(
                k=k,
                x=momentum(k, params.N),
                cos_theta=cos_t,
                sin_theta=sin_t,
                lambda_k=dispersion(params, k),
                degenerate=(math.hypot(a, b) == 0.0),
            )
        )
    return rows


def ground_state(params: ModelParams, sector: Sector) -> GroundStateSummary:
    """Lowest many-body state of ``sector``.

    For ``Sector.CENTERED`` the filling is unconstrained: occupy exactly the
    modes with Lambda_k < 0.  For ``Sector.EVEN`` / ``Sector.ODD`` the
    physical fermion parity of the state must match the sector.  That parity
    is the product of the quasiparticle-count parity and the parity of the
    Bogoliubov vacuum, which is odd whenever a self-conjugate momentum
    (x = 0 or x = pi) has lambda - J cos x < 0 (its vacuum keeps the bare
    fermion filled).  When the unconstrained filling lands in the wrong
    parity class, the cheapest single mode (smallest |Lambda_k|, first in
    grid order on ties) is flipped.

    The energy is accumulated with ``math.fsum`` with the square-root and
    DM contributions kept in separate sums, so the odd-in-momentum DM part
    cancels exactly on symmetric grids: while every Lambda_k stays positive,
    changing D cannot change the energy even at the last bit.
    """
    ks = build_kgrid(params.N, sector)
    modes = mode_table(params, sector)
    parts = [_dispersion_parts(params, k) for k in ks]
    occupations = [m.lambda_k < 0.0 for m in modes]

    signs = [0.5 if occ else -0.5 for occ in occupations]
    energy = math.fsum(w * root for w, (root, _) in zip(signs, parts)) + math.fsum(
        w * dm for w, (_, dm) in zip(signs, parts)
    )

    if sector is not Sector.CENTERED:
        vacuum_parity = 1
        for k in ks:
            if k == 0 or 2 * k == params.N:  # self-conjugate momentum
                a, _, _ = _terms(params, k)
                if a < 0.0:
                    vacuum_parity = -vacuum_parity
        target = 1 if sector is Sector.EVEN else -1
        current = vacuum_parity * (-1 if sum(occupations) % 2 else 1)
        if current != target:
            flip = min(range(params.N), key=lambda i: (abs(modes[i].lambda_k), i))
            occupations[flip] = not occupations[flip]
            energy += abs(modes[flip].lambda_k)

    lambdas = [m.lambda_k for m in modes]
    return GroundStateSummary(
        occupations=tuple(occupations),
        energy=energy,
        min_abs_lambda=min(abs(lv) for lv in lambdas),
        min_lambda=min(lambdas),
        sector=sector,
        degenerate_modes=sum(m.degenerate for m in modes),
    )


def excitation_gap(params: ModelParams) -> float:
    """Smallest |Lambda_k| over the centered grid."""
    return min(
        abs(dispersion(params, k)) for k in build_kgrid(params.N, Sector.CENTERED)
    )


def energy_curvature(params: ModelParams, h: float = 1e-3) -> float:
    """Second derivative of the ground energy with respect to the field.

    Central second difference [E(lam+h) - 2 E(lam) + E(lam-h)] / h^2 on the
    centered grid.  ``h`` must be positive.
    """
    if h <= 0.0:
        raise ValueError(f"step h must be positive, got {h}")
    e_plus = ground_state(replace(params, lam=params.lam + h), Sector.CENTERED).energy
    e_mid = ground_state(params, Sector.CENTERED).energy
    e_minus = ground_state(replace(params, lam=params.lam - h), Sector.CENTERED).energy
    return (e_plus - 2.0 * e_mid + e_minus) / (h * h)
