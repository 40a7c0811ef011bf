"""Brute-force oracles: dense spin chain, Fock-space fermions, particle/hole."""

from __future__ import annotations

import numpy as np
import pytest

from dmxy import (
    HamiltonianSource,
    ModelParams,
    Sector,
    build_bdg,
    build_fermion_fock,
    build_kgrid,
    build_spin_hamiltonian,
    crosscheck,
    dispersion,
    jw_consistency_check,
    spin_ground,
)
from dmxy.oracle import draw_params


def _random_params(rng: np.random.Generator, n: int) -> ModelParams:
    return ModelParams(
        J=float(rng.uniform(-2, 2)),
        gamma=float(rng.uniform(-1, 1)),
        D=float(rng.uniform(-2, 2)),
        lam=float(rng.uniform(-2, 2)),
        N=n,
    )


def _raw_ladder_hamiltonian(params: ModelParams, sector: Sector) -> np.ndarray:
    """The same fermion Hamiltonian built from explicit string operators.

    c_i = Z x ... x Z x S x I x ... x I with no algebraic simplification;
    every bond term is a literal matrix product.  Slower but assumption-free,
    which is the point: it cross-checks the hand-reduced Kronecker factors.
    """
    n = params.N
    ann = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    zpar = np.diag([1.0, -1.0]).astype(complex)
    eye2 = np.eye(2, dtype=complex)

    lowering = []
    for i in range(n):
        factors = [zpar] * i + [ann] + [eye2] * (n - i - 1)
        m = factors[0]
        for f in factors[1:]:
            m = np.kron(m, f)
        lowering.append(m)
    raising = [m.conj().T for m in lowering]

    boundary_sign = -1.0 if sector is Sector.EVEN else 1.0
    hop = params.J + 1.0j * params.D
    pair = params.J * params.gamma
    dim = 2**n
    H = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(dim, dtype=complex)
    for i in range(n):
        j = (i + 1) % n
        f = boundary_sign if j == 0 else 1.0
        H += -f * (hop * raising[i] @ lowering[j] + hop.conjugate() * raising[j] @ lowering[i])
        H += -f * pair * (raising[i] @ raising[j] + lowering[j] @ lowering[i])
        H += -params.lam * (eye - 2.0 * raising[i] @ lowering[i])
    return H


def test_spin_hamiltonian_is_hermitian():
    params = ModelParams(J=1.1, gamma=0.3, D=0.8, lam=-0.4, N=5)
    H = build_spin_hamiltonian(params)
    assert H.source is HamiltonianSource.SPIN_CHAIN
    assert H.dimension == 32
    assert np.allclose(H.matrix, H.matrix.conj().T, atol=1e-14)


def test_two_site_ising_spectrum():
    # the periodic sum at N = 2 doubles the single bond: H = -2 sx sx,
    # so the spectrum is (-2, -2, 2, 2)
    params = ModelParams(J=1.0, gamma=1.0, D=0.0, lam=0.0, N=2)
    values = np.linalg.eigvalsh(build_spin_hamiltonian(params).matrix)
    assert np.allclose(values, [-2.0, -2.0, 2.0, 2.0], atol=1e-12)


def test_two_site_dm_bond_cancels():
    # the two opposite-orientation copies of the DM bond term cancel at N = 2
    plain = ModelParams(J=1.0, gamma=0.5, D=0.0, lam=0.3, N=2)
    twisted = ModelParams(J=1.0, gamma=0.5, D=1.7, lam=0.3, N=2)
    assert np.allclose(
        build_spin_hamiltonian(plain).matrix,
        build_spin_hamiltonian(twisted).matrix,
        atol=0.0,
    )


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("sector", [Sector.EVEN, Sector.ODD])
def test_fock_builder_matches_raw_ladder_construction(n, sector):
    rng = np.random.Generator(np.random.PCG64(500 + n))
    for _ in range(4):
        params = _random_params(rng, n)
        built = build_fermion_fock(params, sector)
        assert np.allclose(
            built.matrix, _raw_ladder_hamiltonian(params, sector), atol=1e-13
        )
    expected = (
        HamiltonianSource.FERMION_ANTIPERIODIC
        if sector is Sector.EVEN
        else HamiltonianSource.FERMION_PERIODIC
    )
    assert built.source is expected


@pytest.mark.parametrize("n", [2, 3, 4, 6, 7, 8])
def test_jw_union_reproduces_spin_spectrum(n):
    rng = np.random.Generator(np.random.PCG64(900 + n))
    for _ in range(4):
        report = jw_consistency_check(_random_params(rng, n))
        assert report.bdg_multiset_error <= 1e-10
        assert report.abs_error <= 1e-9


def test_crosscheck_energy_agreement():
    rng = np.random.Generator(np.random.PCG64(77))
    for n in (2, 3, 5, 9):
        for _ in range(3):
            report = crosscheck(_random_params(rng, n))
            assert report.abs_error <= 1e-9
            assert report.bdg_multiset_error <= 1e-9
            assert report.spin_gap >= -1e-12


def test_crosscheck_prefers_even_sector_in_polarized_phase():
    params = ModelParams(J=1.0, gamma=1.0, D=0.0, lam=2.0, N=6)
    assert crosscheck(params).matched_sector is Sector.EVEN


def test_bdg_multiset_matches_dispersion():
    params = ModelParams(J=1.0, gamma=0.5, D=0.3, lam=0.7, N=8)
    bdg = build_bdg(params, Sector.EVEN)
    assert bdg.dimension == 16
    assert np.allclose(bdg.matrix, bdg.matrix.conj().T, atol=1e-14)
    values = np.linalg.eigvalsh(bdg.matrix)
    lambdas = [dispersion(params, k) for k in build_kgrid(8, Sector.EVEN)]
    expected = np.sort(lambdas + [-v for v in lambdas])
    assert np.max(np.abs(values - expected)) <= 1e-9


def test_spin_ground_flat_case():
    params = ModelParams(J=1.0, gamma=1.0, D=0.0, lam=0.0, N=4)
    energy, gap = spin_ground(params)
    assert energy == pytest.approx(-4.0, abs=1e-12)
    assert gap >= 0.0


def test_builders_reject_out_of_range_sizes():
    big = ModelParams(J=1.0, gamma=1.0, D=0.0, lam=1.0, N=15)
    with pytest.raises(ValueError):
        build_spin_hamiltonian(big)
    fock_big = ModelParams(J=1.0, gamma=1.0, D=0.0, lam=1.0, N=13)
    with pytest.raises(ValueError):
        build_fermion_fock(fock_big, Sector.EVEN)
    with pytest.raises(ValueError):
        jw_consistency_check(fock_big)


def test_builders_reject_centered_sector():
    params = ModelParams(J=1.0, gamma=1.0, D=0.0, lam=1.0, N=4)
    with pytest.raises(ValueError):
        build_fermion_fock(params, Sector.CENTERED)
    with pytest.raises(ValueError):
        build_bdg(params, Sector.CENTERED)


def test_draw_params_ranges():
    rng = np.random.Generator(np.random.PCG64(3))
    for _ in range(100):
        p = draw_params(rng, 6)
        assert -2.0 <= p.J <= 2.0
        assert -1.0 <= p.gamma <= 1.0
        assert -2.0 <= p.D <= 2.0
        assert -2.0 <= p.lam <= 2.0
        assert p.N == 6
