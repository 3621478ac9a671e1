"""Grids, finite differences, the eigensolver, and spectrum matching."""

from .eig import EigenResult, eig_complex
from .grid import (
    Grid,
    discretize_hamiltonian,
    fd_derivative,
    fornberg_weights,
    hamiltonian_matrix,
)
from .jobs import JobOutcome, run_jobs
from .matching import MatchedLevel, MatchReport, boundary_mass, match_spectrum

__all__ = [
    "EigenResult",
    "eig_complex",
    "Grid",
    "discretize_hamiltonian",
    "fd_derivative",
    "fornberg_weights",
    "hamiltonian_matrix",
    "JobOutcome",
    "run_jobs",
    "MatchedLevel",
    "MatchReport",
    "boundary_mass",
    "match_spectrum",
]
