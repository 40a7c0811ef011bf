"""Exact solution of the XY spin chain with Dzyaloshinskii-Moriya interaction.

The package diagonalizes the periodic chain

    H = -sum_j [ J(1+gamma)/2 sx_j sx_{j+1} + J(1-gamma)/2 sy_j sy_{j+1}
                 + D/2 (sx_j sy_{j+1} - sy_j sx_{j+1}) + lambda sz_j ]

by the Jordan-Wigner / Fourier / Bogoliubov route, and layers quantum-phase-
transition probes (geometric phase, ground-state fidelity, finite-size
scaling), a brute-force exact-diagonalization oracle, and a sweep CLI on top
of the analytic core.

A structural property worth knowing up front: the DM strength ``D`` shifts
the quasiparticle energies by an odd-in-momentum term but never enters the
Bogoliubov angles, so every angle-derived quantity is bitwise independent of
``D``.  The test suite pins that down.
"""

from .model import (
    KMode,
    ModelParams,
    Sector,
    bogoliubov_angle,
    build_kgrid,
    dispersion,
    momentum,
)
from .fermion import (
    GroundStateSummary,
    energy_curvature,
    excitation_gap,
    ground_state,
    mode_table,
)
from .probes import (
    ProbeResult,
    ScalingFit,
    evaluate_probes,
    fidelity,
    geometric_phase,
    gp_derivative,
    locate_peak,
    scaling_study,
)
from .oracle import (
    BdgMatrix,
    DenseHamiltonian,
    HamiltonianSource,
    OracleReport,
    build_bdg,
    build_fermion_fock,
    build_spin_hamiltonian,
    crosscheck,
    jw_consistency_check,
    spin_ground,
)
from .tables import SweepTable

__version__ = "0.1.0"

__all__ = [
    "BdgMatrix",
    "DenseHamiltonian",
    "GroundStateSummary",
    "HamiltonianSource",
    "KMode",
    "ModelParams",
    "OracleReport",
    "ProbeResult",
    "ScalingFit",
    "Sector",
    "SweepTable",
    "bogoliubov_angle",
    "build_bdg",
    "build_fermion_fock",
    "build_kgrid",
    "build_spin_hamiltonian",
    "crosscheck",
    "dispersion",
    "energy_curvature",
    "evaluate_probes",
    "excitation_gap",
    "fidelity",
    "geometric_phase",
    "gp_derivative",
    "ground_state",
    "jw_consistency_check",
    "locate_peak",
    "mode_table",
    "momentum",
    "scaling_study",
    "spin_ground",
    "__version__",
]
