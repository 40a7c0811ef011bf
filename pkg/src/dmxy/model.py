"""Couplings, momentum grids, and the single-mode Bogoliubov solution.

Everything downstream (ground states, phase probes, oracles, CLI) is built
from three ingredients defined here:

* ``ModelParams`` -- the validated coupling set (J, gamma, D, lambda, N).
* ``build_kgrid`` -- the allowed momentum labels for a boundary sector.
* ``bogoliubov_angle`` / ``dispersion`` -- the per-mode rotation and
  quasiparticle energy.

The quasiparticle energy of mode k at momentum x = 2*pi*k/N is

    Lambda_k = 2*sqrt((lambda - J cos x)^2 + J^2 gamma^2 sin^2 x) + 2 D sin x

evaluated in exactly that order: the square-root part first, the additive
DM term second.  The Bogoliubov angle is built only from the square-root
part, so it never sees D; keeping the evaluation order fixed makes both the
D-independence of the angles and the additivity of the DM term reproducible
at the bit level, which the test suite relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

__all__ = [
    "KMode",
    "ModelParams",
    "Sector",
    "bogoliubov_angle",
    "build_kgrid",
    "dispersion",
    "momentum",
]

_TAU = math.tau


class Sector(Enum):
    """Momentum-grid / fermion-parity sector selector.

    CENTERED
        The symmetric window k = -(N-1)/2, ..., (N-1)/2 (integers for odd N,
        half-odd-integers for even N).  This is the grid used by the phase
        probes; it carries no parity constraint.  CLI name: ``paper``.
    EVEN
        Antiperiodic fermion grid (half-odd-integer k), paired with the
        even-fermion-parity constraint of the periodic spin chain.
    ODD
        Periodic fermion grid (integer k, including the k = N/2
        representative when N is even), paired with odd fermion parity.
    """

    CENTERED = "paper"
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class ModelParams:
    """Coupling constants of the chain.

    Parameters
    ----------
    J : float
        Exchange coupling.
    gamma : float
        XY anisotropy (gamma = 1 is the transverse-field Ising limit,
        gamma = 0 the isotropic XX limit).
    D : float
        Dzyaloshinskii-Moriya strength (z component).
    lam : float
        Transverse-field strength.
    N : int
        Number of sites, at least 2.

    All couplings must be finite reals; construction raises ``ValueError``
    otherwise.  Instances are frozen, so they are safe to share across
    worker processes.
    """

    J: float
    gamma: float
    D: float
    lam: float
    N: int

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or isinstance(self.N, bool):
            raise ValueError(f"N must be an integer, got {self.N!r}")
        if self.N < 2:
            raise ValueError(f"N must be at least 2, got {self.N}")
        for name in ("J", "gamma", "D", "lam"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValueError(f"{name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class KMode:
    """One row of the mode table: label, momentum, rotation, energy.

    ``k`` is kept as an exact rational (denominator 1 or 2); ``x`` is the
    momentum 2*pi*k/N.  ``degenerate`` marks a gapless mode where the
    Bogoliubov rotation is undefined and the (1, 0) convention was applied.
    """

    k: Fraction
    x: float
    cos_theta: float
    sin_theta: float
    lambda_k: float
    degenerate: bool


def build_kgrid(N: int, sector: Sector) -> list[Fraction]:
    """Return the N momentum labels of ``sector``, ascending.

    Labels are exact ``Fraction`` values with denominator 1 or 2.  The
    centered grid spans -(N-1)/2 ... (N-1)/2; the even (antiperiodic) grid
    uses half-odd-integers and the odd (periodic) grid uses integers, each
    covering the Brillouin zone once.  For even N the odd grid includes the
    self-conjugate k = N/2 label (momentum pi) rather than its -N/2 twin.
    """
    if not isinstance(N, int) or isinstance(N, bool):
        raise ValueError(f"N must be an integer, got {N!r}")
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    if sector is Sector.CENTERED:
        start = -(N - 1)
    elif sector is Sector.EVEN:
        # half-odd-integer labels: doubled labels must be odd
        start = -N + 1 if N % 2 == 0 else -N + 2
    elif sector is Sector.ODD:
        # integer labels: doubled labels must be even
        start = -N + 2 if N % 2 == 0 else -N + 1
    else:  # pragma: no cover - exhaustive over the enum
        raise ValueError(f"unknown sector {sector!r}")
    return [Fraction(start + 2 * i, 2) for i in range(N)]


def momentum(k: Fraction | int | float, N: int) -> float:
    """Momentum x = 2*pi*k/N of the mode labelled ``k`` on an N-site ring."""
    return _TAU * float(k) / N


def _terms(params: ModelParams, k) -> tuple[float, float, float]:
    """Shared numerator pieces: (lambda - J cos x, J gamma sin x, sin x)."""
    x = _TAU * float(k) / params.N
    s = math.sin(x)
    a = params.lam - params.J * math.cos(x)
    b = params.J * params.gamma * s
    return a, b, s


def bogoliubov_angle(params: ModelParams, k) -> tuple[float, float]:
    """Cosine and sine of the Bogoliubov rotation angle of mode ``k``.

    Parameters
    ----------
    params : ModelParams
        Couplings; the DM strength ``params.D`` is never read, so the
        result is bitwise identical for any D.
    k : Fraction | int | float
        Mode label; the momentum is x = 2*pi*k/N.

    Returns
    -------
    (cos_theta, sin_theta)
        With R = sqrt((lambda - J cos x)^2 + J^2 gamma^2 sin^2 x), the pair
        ((lambda - J cos x)/R, (J gamma sin x)/R), clamped to [-1, 1].  A
        gapless mode (R = 0) returns the convention pair (1.0, 0.0).

    Notes
    -----
    When one of the two numerators vanishes exactly the result is emitted
    as an exact unit pair (+-1, 0) or (0, +-1) instead of rounding through
    the division.
    """
    a, b, _ = _terms(params, k)
    r = math.hypot(a, b)
    if r == 0.0:
        return (1.0, 0.0)
    if b == 0.0:
        return (math.copysign(1.0, a), 0.0)
    if a == 0.0:
        return (0.0, math.copysign(1.0, b))
    c = a / r
    s = b / r
    if c > 1.0:
        c = 1.0
    elif c < -1.0:
        c = -1.0
    if s > 1.0:
        s = 1.0
    elif s < -1.0:
        s = -1.0
    return (c, s)


def is_gapless(params: ModelParams, k) -> bool:
    """True when mode ``k`` sits exactly at a degeneracy (R = 0)."""
    a, b, _ = _terms(params, k)
    return math.hypot(a, b) == 0.0


def _dispersion_parts(params: ModelParams, k) -> tuple[float, float]:
    """Quasiparticle energy split as (square-root part, DM part).

    The full energy is the rounded sum of the two; keeping them apart lets
    the ground-state accumulator cancel the odd-in-k DM part exactly on
    symmetric grids.
    """
    a, b, s = _terms(params, k)
    return 2.0 * math.hypot(a, b), (2.0 * params.D) * s


def dispersion(params: ModelParams, k) -> float:
    """Quasiparticle energy Lambda_k of mode ``k``.

    Computed as 2*sqrt((lambda - J cos x)^2 + J^2 gamma^2 sin^2 x)
    + 2*D*sin x, in that order.  The value may be negative for large |D|;
    a negative Lambda_k means the corresponding quasiparticle is occupied
    in the lowest state (see ``dmxy.fermion.ground_state``).
    """
    root, dm = _dispersion_parts(params, k)
    return root + dm
