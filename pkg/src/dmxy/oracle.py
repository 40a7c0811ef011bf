"""Brute-force exact-diagonalization oracle for small chains.

Three independent constructions cross-check the analytic solution:

* a dense spin-basis Hamiltonian built term by term from Pauli matrices,
* dense Fock-space quadratic fermion Hamiltonians for both boundary
  sectors (antiperiodic and periodic), built from Jordan-Wigner strings,
* a 2N x 2N particle/hole (Nambu) matrix whose spectrum must be the
  multiset {+-Lambda_k} of the sector grid.

``jw_consistency_check`` verifies the parity-resolved spectral identity

    spec(spin chain) = spec(antiperiodic | even parity)
                       union spec(periodic | odd parity)

eigenvalue by eigenvalue, and ``crosscheck`` compares ground energies only
(which scales to slightly larger N).  Spectra are compared sorted, never by
matching eigenvectors, so degeneracies are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fermion import ground_state
from .model import ModelParams, Sector, build_kgrid, dispersion

__all__ = [
    "BdgMatrix",
    "DenseHamiltonian",
    "HamiltonianSource",
    "OracleReport",
    "build_bdg",
    "build_fermion_fock",
    "build_spin_hamiltonian",
    "crosscheck",
    "draw_params",
    "jw_consistency_check",
    "spin_ground",
]

MAX_SPIN_SITES = 14
MAX_FOCK_SITES = 12

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# fermion site operators in the occupation basis (|0> empty, |1> filled)
_ANN = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_CRE = _ANN.conj().T


class HamiltonianSource(Enum):
    """Which construction produced a dense matrix."""

    SPIN_CHAIN = "spin"
    FERMION_ANTIPERIODIC = "fermion-antiperiodic"
    FERMION_PERIODIC = "fermion-periodic"


@dataclass(frozen=True)
class DenseHamiltonian:
    """Dense 2^N x 2^N matrix plus provenance tag."""

    matrix: np.ndarray
    source: HamiltonianSource
    n_sites: int

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BdgMatrix:
    """2N x 2N particle/hole matrix of one boundary sector."""

    matrix: np.ndarray
    sector: Sector

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one analytic-vs-brute-force comparison."""

    spin_ground_energy: float
    analytic_ground_energy: float
    abs_error: float
    spin_gap: float
    matched_sector: Sector
    bdg_multiset_error: float


def _embed(factors: dict[int, np.ndarray], n: int) -> np.ndarray:
    """Kronecker chain with 2x2 ``factors`` at the given sites, identity elsewhere."""
    out = np.array([[1.0 + 0.0j]])
    for site in range(n):
        out = np.kron(out, factors.get(site, _I2))
    return out


def _check_site_count(N: int, cap: int, what: str) -> None:
    if N < 2 or N > cap:
        raise ValueError(f"{what} supports 2 <= N <= {cap}, got {N}")


def build_spin_hamiltonian(params: ModelParams) -> DenseHamiltonian:
    """Dense spin-basis Hamiltonian of the periodic chain.

    Every bond term of the chain is added literally, j = 1..N with site
    N+1 identified with site 1.  At N = 2 this double-counts the single
    physical bond -- deliberately, to stay faithful to the periodic sum
    convention (note the two DM bond terms cancel each other there).
    """
    _check_site_count(params.N, MAX_SPIN_SITES, "build_spin_hamiltonian")
    n = params.N
    J, gamma, D, lam = params.J, params.gamma, params.D, params.lam
    dim = 2**n
    H = np.zeros((dim, dim), dtype=complex)
    for j in range(n):
        jp = (j + 1) % n
        H += (-J * (1.0 + gamma) / 2.0) * _embed({j: _SX, jp: _SX}, n)
        H += (-J * (1.0 - gamma) / 2.0) * _embed({j: _SY, jp: _SY}, n)
        H += (-D / 2.0) * _embed({j: _SX, jp: _SY}, n)
        H += (+D / 2.0) * _embed({j: _SY, jp: _SX}, n)
        H += (-lam) * _embed({j: _SZ}, n)
    return DenseHamiltonian(matrix=H, source=HamiltonianSource.SPIN_CHAIN, n_sites=n)


def build_fermion_fock(params: ModelParams, sector: Sector) -> DenseHamiltonian:
    """Dense Fock-space quadratic fermion Hamiltonian of one boundary sector.

    H = -sum_i [ (J + iD) c+_i c_{i+1} + (J - iD) c+_{i+1} c_i
                 + J gamma (c+_i c+_{i+1} + c_{i+1} c_i) + lambda (1 - 2 n_i) ]

    with c_{N+1} = -c_1 for ``Sector.EVEN`` (antiperiodic) and
    c_{N+1} = +c_1 for ``Sector.ODD`` (periodic).  The boundary bond
    carries the Jordan-Wigner Z-string across the interior sites; the bond
    operators were reduced to explicit Kronecker factors by normal-ordering
    the strings once by hand, and a test re-derives them from raw ladder
    matrices.
    """
    if sector is Sector.CENTERED:
        raise ValueError("build_fermion_fock needs a parity sector (EVEN or ODD)")
    _check_site_count(params.N, MAX_FOCK_SITES, "build_fermion_fock")
    n = params.N
    J, gamma, D, lam = params.J, params.gamma, params.D, params.lam
    eta = -1.0 if sector is Sector.EVEN else 1.0
    hop = J + 1.0j * D

    dim = 2**n
    H = np.zeros((dim, dim), dtype=complex)
    for i in range(n - 1):
        H += (-hop) * _embed({i: _CRE, i + 1: _ANN}, n)
        H += (-hop.conjugate()) * _embed({i: _ANN, i + 1: _CRE}, n)
        H += (-J * gamma) * _embed({i: _CRE, i + 1: _CRE}, n)
        H += (-J * gamma) * _embed({i: _ANN, i + 1: _ANN}, n)
    # boundary bond (N, 1): the string over interior sites survives, and
    # commuting c_1 through site 1's own string flips the pairing sign.
    string = {site: _SZ for site in range(1, n - 1)}
    H += (-hop * eta) * _embed({0: _ANN, **string, n - 1: _CRE}, n)
    H += (-hop.conjugate() * eta) * _embed({0: _CRE, **string, n - 1: _ANN}, n)
    H += (+J * gamma * eta) * _embed({0: _CRE, **string, n - 1: _CRE}, n)
    H += (+J * gamma * eta) * _embed({0: _ANN, **string, n - 1: _ANN}, n)
    for i in range(n):
        H += (-lam) * _embed({i: _SZ}, n)  # lambda (1 - 2 n_i) per site
    source = (
        HamiltonianSource.FERMION_ANTIPERIODIC
        if sector is Sector.EVEN
        else HamiltonianSource.FERMION_PERIODIC
    )
    return DenseHamiltonian(matrix=H, source=source, n_sites=n)


def spin_ground(params: ModelParams) -> tuple[float, float]:
    """Ground energy and lowest gap of the dense spin Hamiltonian.

    The gap is the difference of the two smallest eigenvalues; it is zero
    up to rounding for a degenerate ground state.
    """
    values = np.linalg.eigvalsh(build_spin_hamiltonian(params).matrix)
    return float(values[0]), float(values[1] - values[0])


def build_bdg(params: ModelParams, sector: Sector) -> BdgMatrix:
    """Particle/hole matrix of one boundary sector.

    Basis order (c_1 .. c_N, c+_1 .. c+_N).  With hopping block A
    (entries -(J +- iD) plus 2 lambda on the diagonal) and antisymmetric
    pairing block B (entries -+ J gamma), the matrix is

        [[A, B], [-conj(B), -transpose(A)]]

    and its eigenvalue multiset is {+-Lambda_k} over the sector's grid.
    """
    if sector is Sector.CENTERED:
        raise ValueError("build_bdg needs a parity sector (EVEN or ODD)")
    n = params.N
    J, gamma, D, lam = params.J, params.gamma, params.D, params.lam
    eta = -1.0 if sector is Sector.EVEN else 1.0
    hop = J + 1.0j * D

    A = np.zeros((n, n), dtype=complex)
    B = np.zeros((n, n), dtype=complex)
    for i in range(n):
        A[i, i] = 2.0 * lam
    for i in range(n - 1):
        A[i, i + 1] += -hop
        A[i + 1, i] += -hop.conjugate()
        B[i, i + 1] += -J * gamma
        B[i + 1, i] += +J * gamma
    A[n - 1, 0] += -eta * hop
    A[0, n - 1] += -eta * hop.conjugate()
    B[n - 1, 0] += -eta * J * gamma
    B[0, n - 1] += +eta * J * gamma

    top = np.hstack([A, B])
    bottom = np.hstack([-B.conj(), -A.T])
    return BdgMatrix(matrix=np.vstack([top, bottom]), sector=sector)


def _bdg_multiset_error(params: ModelParams, sector: Sector) -> float:
    """Max |sorted BdG spectrum - sorted {+-Lambda_k}| for one sector."""
    values = np.linalg.eigvalsh(build_bdg(params, sector).matrix)
    lambdas = [dispersion(params, k) for k in build_kgrid(params.N, sector)]
    expected = np.sort(np.array(lambdas + [-lv for lv in lambdas]))
    return float(np.max(np.abs(values - expected)))


def _parity_indices(n: int) -> tuple[list[int], list[int]]:
    even, odd = [], []
    for index in range(2**n):
        (even if bin(index).count("1") % 2 == 0 else odd).append(index)
    return even, odd


def _analytic_best(params: ModelParams) -> tuple[float, Sector]:
    even = ground_state(params, Sector.EVEN).energy
    odd = ground_state(params, Sector.ODD).energy
    if even <= odd:
        return even, Sector.EVEN
    return odd, Sector.ODD


def crosscheck(params: ModelParams) -> OracleReport:
    """Ground-energy comparison: dense spin chain vs parity-resolved filling.

    Runs the dense spin diagonalization, the sector-resolved analytic
    ground states, and the particle/hole spectral check for both boundary
    sectors; ``bdg_multiset_error`` reports the worse of the two sectors.
    """
    spin_e0, spin_gap = spin_ground(params)
    analytic, matched = _analytic_best(params)
    bdg_error = max(
        _bdg_multiset_error(params, Sector.EVEN),
        _bdg_multiset_error(params, Sector.ODD),
    )
    return OracleReport(
        spin_ground_energy=spin_e0,
        analytic_ground_energy=analytic,
        abs_error=abs(spin_e0 - analytic),
        spin_gap=spin_gap,
        matched_sector=matched,
        bdg_multiset_error=bdg_error,
    )


def jw_consistency_check(params: ModelParams) -> OracleReport:
    """Full-spectrum identity between the spin chain and the fermion sectors.

    Diagonalizes the spin Hamiltonian and both Fock-space fermion
    Hamiltonians, restricts the antiperiodic one to even fermion parity and
    the periodic one to odd parity, and compares the sorted union against
    the sorted spin spectrum.  ``bdg_multiset_error`` carries the largest
    absolute eigenvalue discrepancy of that comparison.
    """
    _check_site_count(params.N, MAX_FOCK_SITES, "jw_consistency_check")
    spin_values = np.linalg.eigvalsh(build_spin_hamiltonian(params).matrix)
    even_idx, odd_idx = _parity_indices(params.N)

    h_anti = build_fermion_fock(params, Sector.EVEN).matrix
    h_peri = build_fermion_fock(params, Sector.ODD).matrix
    even_values = np.linalg.eigvalsh(h_anti[np.ix_(even_idx, even_idx)])
    odd_values = np.linalg.eigvalsh(h_peri[np.ix_(odd_idx, odd_idx)])
    union = np.sort(np.concatenate([even_values, odd_values]))
    spectrum_error = float(np.max(np.abs(union - spin_values)))

    analytic, matched = _analytic_best(params)
    spin_e0 = float(spin_values[0])
    return OracleReport(
        spin_ground_energy=spin_e0,
        analytic_ground_energy=analytic,
        abs_error=abs(spin_e0 - analytic),
        spin_gap=float(spin_values[1] - spin_values[0]),
        matched_sector=matched,
        bdg_multiset_error=spectrum_error,
    )


def draw_params(rng: np.random.Generator, N: int) -> ModelParams:
    """One random coupling set: J, lambda, D uniform in [-2, 2], gamma in [-1, 1]."""
    return ModelParams(
        J=float(rng.uniform(-2.0, 2.0)),
        gamma=float(rng.uniform(-1.0, 1.0)),
        D=float(rng.uniform(-2.0, 2.0)),
        lam=float(rng.uniform(-2.0, 2.0)),
        N=N,
    )
