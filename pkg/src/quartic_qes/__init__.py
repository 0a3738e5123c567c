"""Quartic nilpotent group, its representations, and quasi-exact solutions of the quartic oscillator."""

from .group import BetaVector, GroupElement, casimir_c, compose, inverse, scale_beta, translate_beta
from .potential import PotentialParams, classify_well, eval_potential
from .qes import (
    Parity,
    QESProblem,
    QESSolution,
    closed_form_n1,
    closed_form_n2,
    czero_solutions,
    scaled_energy_check,
    solve_qes,
)
from .wavefunction import WavefunctionSpec, count_nodes, eval_psi
from .oracle import OracleConfig, lowest_eigenvalues, rank_of_energy

__version__ = "0.1.0"

__all__ = [
    "BetaVector",
    "GroupElement",
    "casimir_c",
    "compose",
    "inverse",
    "scale_beta",
    "translate_beta",
    "PotentialParams",
    "classify_well",
    "eval_potential",
    "Parity",
    "QESProblem",
    "QESSolution",
    "closed_form_n1",
    "closed_form_n2",
    "czero_solutions",
    "scaled_energy_check",
    "solve_qes",
    "WavefunctionSpec",
    "count_nodes",
    "eval_psi",
    "OracleConfig",
    "lowest_eigenvalues",
    "rank_of_energy",
]
