"""Simulator for a spin-1/2 particle hopping on a two- or three-site lattice
while exchange-coupled to two static spins pinned at the outer sites.

Exact dynamics, strong-hopping effective three-spin-chain dynamics,
entanglement generation and quantum state transfer, with a CLI that emits
deterministic CSV tables.
"""

from . import backend
from .analysis import (
    ConservationReport,
    DeviationReport,
    compare_exact_effective,
    conservation_monitor,
    estimate_period,
    log_negativity,
)
from .dynamics import (
    HAMILTONIAN_KINDS,
    AnalyticSolution,
    ObservableRecord,
    TimeGrid,
    analytic_period,
    analytic_two_site,
    doublet_leakage,
    evolve_on_grid,
    hamiltonian_for,
    observables,
    qst_trajectory,
    run_trajectory,
)
from .linalg import (
    Eigensystem,
    hermitian_eigensystem,
    kron,
    partial_trace,
    partial_transpose,
    propagate,
    trace_norm_hermitian,
)
from .model import (
    EFFECTIVE_VARIANTS,
    BasisLayout,
    ModelSpec,
    SpinOperatorSet,
    build_effective_hamiltonian,
    build_hamiltonian,
    build_hopping,
    build_interaction,
    encode_state,
    motional_hopping,
    spin_operators,
    static_pair_state,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticSolution",
    "BasisLayout",
    "ConservationReport",
    "DeviationReport",
    "EFFECTIVE_VARIANTS",
    "Eigensystem",
    "HAMILTONIAN_KINDS",
    "ModelSpec",
    "ObservableRecord",
    "SpinOperatorSet",
    "TimeGrid",
    "analytic_period",
    "analytic_two_site",
    "backend",
    "build_effective_hamiltonian",
    "build_hamiltonian",
    "build_hopping",
    "build_interaction",
    "compare_exact_effective",
    "conservation_monitor",
    "doublet_leakage",
    "encode_state",
    "estimate_period",
    "evolve_on_grid",
    "hamiltonian_for",
    "hermitian_eigensystem",
    "kron",
    "log_negativity",
    "motional_hopping",
    "observables",
    "partial_trace",
    "partial_transpose",
    "propagate",
    "qst_trajectory",
    "run_trajectory",
    "spin_operators",
    "static_pair_state",
    "trace_norm_hermitian",
]
