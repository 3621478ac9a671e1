"""Match numerically computed eigenvalues against an analytic spectrum.

Discretizing on a finite box produces three populations: genuine bound
states, box artifacts (scattering-like vectors with weight piled at the
walls), and unconverged junk.  The filter chain here is: keep converged
eigenvalues below the energy cutoff with a small imaginary part, drop
anything whose eigenvector carries noticeable probability mass near
the box edges, then greedily pair the survivors with analytic levels by
closest energy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ParameterError
from ..potentials import Level
from .eig import EigenResult

__all__ = ["MatchedLevel", "MatchReport", "boundary_mass", "match_spectrum"]


def boundary_mass(vector: np.ndarray, fraction: float = 0.05) -> float:
    """Fraction of |v|^2 living in the outer ``fraction`` of each side."""
    v = np.asarray(vector)
    n = v.size
    edge = max(1, int(round(fraction * n)))
    weight = np.abs(v) ** 2
    total = float(np.sum(weight))
    if total == 0.0:
        raise ParameterError("boundary_mass: zero vector")
    return float(np.sum(weight[:edge]) + np.sum(weight[n - edge :])) / total


@dataclass(frozen=True)
class MatchedLevel:
    """One analytic level paired with its numerical eigenvalue."""

    level: Level
    analytic_energy: float
    numeric_energy: complex
    abs_error: float
    imag_abs: float


@dataclass(frozen=True)
class MatchReport:
    """Outcome of pairing a numerical run with an analytic spectrum.

    ``unmatched`` lists analytic levels no candidate was close to;
    ``spurious_count`` counts candidates rejected by the boundary-mass
    filter; ``candidates_count`` is the pool size after the energy and
    convergence cuts.
    """

    matched: tuple[MatchedLevel, ...]
    unmatched: tuple[Level, ...]
    spurious_count: int
    candidates_count: int

    @property
    def max_abs_error(self) -> float:
        return max((m.abs_error for m in self.matched), default=0.0)

    @property
    def max_imag(self) -> float:
        return max((m.imag_abs for m in self.matched), default=0.0)

    def summary_rows(self) -> list[dict]:
        rows = []
        for m in self.matched:
            rows.append(
                {
                    "q": m.level.q,
                    "n": m.level.n,
                    "analytic": m.analytic_energy,
                    "numeric_re": m.numeric_energy.real,
                    "numeric_im": m.numeric_energy.imag,
                    "abs_error": m.abs_error,
                }
            )
        return rows


def match_spectrum(
    result: EigenResult,
    analytic: Sequence[tuple[Level, float]],
    energy_cutoff: float,
    im_tol: float = 1e-4,
    mass_tol: float = 1e-3,
    mass_fraction: float = 0.05,
) -> MatchReport:
    """Pair eigenvalues from ``result`` with analytic (level, energy) rows.

    Args:
        result: eigensolver output for the discretized Hamiltonian.
        analytic: levels with their exact energies, any order.
        energy_cutoff: only eigenvalues with real part at or below this
            enter the candidate pool.
        im_tol: candidates need |Im E| below this (bound states of a
            PT-symmetric problem in its unbroken phase are real).
        mass_tol: boundary-mass threshold separating box artifacts.
        mass_fraction: width of each edge window, as a grid fraction.

    Matching is greedy on |E_numeric - E_analytic|, injective on both
    sides, and refuses nothing else: an analytic level with no candidate
    within any distance simply lands in ``unmatched``.
    """
    pool: list[tuple[int, complex]] = []
    spurious = 0
    for k, lam in enumerate(result.eigenvalues):
        if not result.converged[k]:
            continue
        if lam.real > energy_cutoff or abs(lam.imag) > im_tol:
            continue
        if boundary_mass(result.eigenvector(k), mass_fraction) > mass_tol:
            spurious += 1
            continue
        pool.append((k, complex(lam)))

    pairs: list[tuple[float, int, int]] = []
    for ai, (_, energy) in enumerate(analytic):
        for pi, (_, lam) in enumerate(pool):
            pairs.append((abs(lam.real - energy), ai, pi))
    pairs.sort(key=lambda t: t[0])

    taken_a: set[int] = set()
    taken_p: set[int] = set()
    assigned: dict[int, int] = {}
    for _, ai, pi in pairs:
        if ai in taken_a or pi in taken_p:
            continue
        assigned[ai] = pi
        taken_a.add(ai)
        taken_p.add(pi)

    matched = []
    unmatched = []
    for ai, (level, energy) in enumerate(analytic):
        if ai in assigned:
            lam = pool[assigned[ai]][1]
            matched.append(
                MatchedLevel(
                    level=level,
                    analytic_energy=float(energy),
                    numeric_energy=lam,
                    abs_error=abs(lam.real - energy),
                    imag_abs=abs(lam.imag),
                )
            )
        else:
            unmatched.append(level)
    matched.sort(key=lambda m: (m.analytic_energy, -m.level.q, m.level.n))
    return MatchReport(
        matched=tuple(matched),
        unmatched=tuple(unmatched),
        spurious_count=spurious,
        candidates_count=len(pool),
    )
