"""Order-two parasupersymmetric chains built from two superpotentials.

Two first-order factorizations W1, W2 that satisfy the closure
constraint

    W2^2 - W1^2 - W1' - W2' = c,        c = c1 - c2, c1 + c2 = 0,

assemble three Hamiltonians into one chain,

    H1 = Abar1 A1 + c1,   H2 = A1 Abar1 + c1 = Abar2 A2 + c2,
    H3 = A2 Abar2 + c2,

with A_i = d/dx + W_i.  The 3x3 charge Q has (Q)_{i,j} = A_j at
(i, j) = (j+1, j) and satisfies Q^3 = 0 together with the trilinear
relation Q^2 Qbar + Q Qbar Q + Qbar Q^2 = 2 Q H, H = diag(H1, H2, H3).

Each family admits two inequivalent choices of the pair (W1, W2); both
leave every H_i inside the family up to a constant shift, so the merged
spectrum of the chain follows from the closed-form tower energies.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ParameterError
from .numerics.grid import Grid, fd_derivative
from .potentials import (
    Level,
    OscillatorParams,
    Params,
    PoschlTellerParams,
    ScarfParams,
    bound_levels,
    energy,
    potential,
    validate,
)
from .susy import SuperpotentialSpec, Variant, superpotential, superpotential_derivative

__all__ = [
    "Choice",
    "Triplet",
    "SpectrumEntry",
    "AlgebraReport",
    "shift_constant",
    "build_triplet",
    "component_energy",
    "component_levels",
    "constraint_deviation",
    "merged_spectrum",
    "limiting_pattern",
    "algebra_deviation",
]


class Choice(enum.Enum):
    """Which of the two admissible (W1, W2) pairs to use."""

    FIRST = "first"
    SECOND = "second"

    @classmethod
    def from_label(cls, label: str) -> "Choice":
        for ch in cls:
            if ch.value == label:
                return ch
        raise ParameterError(f"unknown choice {label!r}; expected 'first' or 'second'")


def shift_constant(params: Params, choice: Choice) -> float:
    """The constant c1 of the chain (c2 is always -c1)."""
    if isinstance(params, OscillatorParams):
        return -2.0 * params.alpha if choice is Choice.FIRST else 2.0 * params.alpha
    half = 0.5 * (params.a**2 - (params.b - 0.5) ** 2)
    if isinstance(params, PoschlTellerParams):
        return half if choice is Choice.FIRST else -half
    return -half if choice is Choice.FIRST else half


@dataclass(frozen=True)
class Triplet:
    """The assembled chain: superpotentials, constants, components.

    ``components[i]`` identifies H_{i+1} as the family Hamiltonian at
    some parameter set plus a constant offset.
    """

    params: Params
    choice: Choice
    w1: SuperpotentialSpec
    w2: SuperpotentialSpec
    c1: float
    c2: float
    components: tuple[tuple[Params, float], tuple[Params, float], tuple[Params, float]]

    @property
    def c(self) -> float:
        return self.c1 - self.c2


def build_triplet(params: Params, choice: Choice) -> Triplet:
    """Assemble the chain for one family and choice.

    The base parameter set is validated strictly; shifted sets appearing
    in W2 and in the component identifications only need to be
    evaluable (their towers may be partly or fully empty), except that
    a shifted oscillator core strength must stay positive.

    Raises:
        ParameterError: invalid base parameters, or (oscillator, first
            choice) with alpha <= 1.
    """
    validate(params)
    c1 = shift_constant(params, choice)
    c2 = -c1
    if isinstance(params, OscillatorParams):
        if choice is Choice.FIRST:
            if not params.alpha > 1.0:
                raise ParameterError(
                    f"oscillator first choice needs alpha > 1, got {params.alpha}"
                )
            down = dataclasses.replace(params, alpha=params.alpha - 1.0)
            w1 = SuperpotentialSpec(params, Variant.PRIMARY)
            w2 = SuperpotentialSpec(down, Variant.SECONDARY)
            comps = ((params, -2.0), (down, 0.0), (params, +2.0))
        else:
            up = dataclasses.replace(params, alpha=params.alpha + 1.0)
            w1 = SuperpotentialSpec(params, Variant.SECONDARY)
            w2 = SuperpotentialSpec(up, Variant.PRIMARY)
            comps = ((params, -2.0), (up, 0.0), (params, +2.0))
        return Triplet(params, choice, w1, w2, c1, c2, comps)

    shift = 0.5 * (params.a**2 + (params.b - 0.5) ** 2)
    if isinstance(params, PoschlTellerParams):
        if choice is Choice.FIRST:
            mid = dataclasses.replace(params, b=params.b - 1.0)
            w1 = SuperpotentialSpec(params, Variant.PRIMARY)
            w2 = SuperpotentialSpec(mid, Variant.SECONDARY)
        else:
            mid = dataclasses.replace(params, a=params.a - 1.0)
            w1 = SuperpotentialSpec(params, Variant.SECONDARY)
            w2 = SuperpotentialSpec(mid, Variant.PRIMARY)
        last = dataclasses.replace(params, a=params.a - 1.0, b=params.b - 1.0)
    elif isinstance(params, ScarfParams):
        if choice is Choice.FIRST:
            mid = dataclasses.replace(params, a=params.a - 1.0)
            w1 = SuperpotentialSpec(params, Variant.PRIMARY)
            w2 = SuperpotentialSpec(mid, Variant.SECONDARY)
        else:
            mid = dataclasses.replace(params, b=params.b - 1.0)
            w1 = SuperpotentialSpec(params, Variant.SECONDARY)
            w2 = SuperpotentialSpec(mid, Variant.PRIMARY)
        last = dataclasses.replace(params, a=params.a - 1.0, b=params.b - 1.0)
    else:
        raise ParameterError(f"unrecognized parameter set {params!r}")
    comps = ((params, shift), (mid, shift), (last, shift))
    return Triplet(params, choice, w1, w2, c1, c2, comps)


def component_energy(triplet: Triplet, component: int, level: Level) -> float:
    """Energy of one level of H_component (component in {1, 2, 3})."""
    if component not in (1, 2, 3):
        raise ParameterError(f"component {component} must be 1, 2 or 3")
    comp_params, offset = triplet.components[component - 1]
    return energy(comp_params, level.q, level.n) + offset


def _dedup_limiting(
    levels: list[tuple[Level, float]], merge_tol: float
) -> list[tuple[Level, float]]:
    # at an exact tower tie the two towers hold the same states once,
    # not twice; keep the q=+1 representative
    kept: list[tuple[Level, float]] = []
    for lvl, e in levels:
        if any(abs(e - e0) <= merge_tol for _, e0 in kept):
            continue
        kept.append((lvl, e))
    return kept


def component_levels(
    triplet: Triplet,
    component: int,
    energy_cutoff: Optional[float] = None,
    max_per_tower: Optional[int] = None,
    merge_tol: float = 1e-9,
) -> list[tuple[Level, float]]:
    """Bound levels of H_component with the chain offset applied."""
    if component not in (1, 2, 3):
        raise ParameterError(f"component {component} must be 1, 2 or 3")
    comp_params, offset = triplet.components[component - 1]
    cut = None if energy_cutoff is None else energy_cutoff - offset
    levels = bound_levels(comp_params, energy_cutoff=cut, max_per_tower=max_per_tower)
    if comp_params.limiting:
        levels = _dedup_limiting(levels, merge_tol)
    return [(lvl, e + offset) for lvl, e in levels]


@dataclass(frozen=True)
class SpectrumEntry:
    """One merged energy of the chain with its membership."""

    energy: float
    degeneracy: int
    members: tuple[tuple[int, Level], ...]

    def to_json_dict(self) -> dict:
        return {
            "energy": self.energy,
            "degeneracy": self.degeneracy,
            "members": [
                {"component": comp, "q": lvl.q, "n": lvl.n} for comp, lvl in self.members
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SpectrumEntry":
        members = tuple(
            (int(m["component"]), Level(int(m["q"]), int(m["n"])))
            for m in data["members"]
        )
        return cls(float(data["energy"]), int(data["degeneracy"]), members)

    def to_csv_row(self) -> list[str]:
        packed = ";".join(f"{comp}:{lvl.q:+d}:{lvl.n}" for comp, lvl in self.members)
        return [repr(float(self.energy)), str(self.degeneracy), packed]

    @classmethod
    def from_csv_row(cls, row: Sequence[str]) -> "SpectrumEntry":
        energy_s, degeneracy_s, packed = row
        members = []
        if packed:
            for chunk in packed.split(";"):
                comp_s, q_s, n_s = chunk.split(":")
                members.append((int(comp_s), Level(int(q_s), int(n_s))))
        return cls(float(energy_s), int(degeneracy_s), tuple(members))


def merged_spectrum(
    triplet: Triplet,
    energy_cutoff: Optional[float] = None,
    max_entries: Optional[int] = None,
    merge_tol: float = 1e-9,
) -> list[SpectrumEntry]:
    """Union of the three component spectra, grouped into degenerate entries.

    Levels whose energies agree within ``merge_tol`` form one entry;
    the entry energy is the first member's (members are ordered by
    component, then quasi-parity +1 before -1, then index).  For the
    unbounded oscillator towers at least one of ``energy_cutoff`` or
    ``max_entries`` is required.

    Args:
        triplet: chain under consideration.
        energy_cutoff: keep only energies <= cutoff.
        max_entries: keep only the lowest entries.
        merge_tol: absolute degeneracy-grouping tolerance.
    """
    unbounded = isinstance(triplet.params, OscillatorParams)
    if unbounded and energy_cutoff is None and max_entries is None:
        raise ParameterError(
            "oscillator chains are unbounded: pass energy_cutoff and/or max_entries"
        )
    per_tower = None
    if max_entries is not None:
        per_tower = max_entries
    pool: list[tuple[float, int, Level]] = []
    for comp in (1, 2, 3):
        for lvl, e in component_levels(
            triplet, comp, energy_cutoff=energy_cutoff, max_per_tower=per_tower,
            merge_tol=merge_tol,
        ):
            pool.append((e, comp, lvl))
    pool.sort(key=lambda item: (item[0], item[1], -item[2].q, item[2].n))
    entries: list[SpectrumEntry] = []
    group: list[tuple[float, int, Level]] = []
    for item in pool:
        if group and abs(item[0] - group[0][0]) > merge_tol:
            members = tuple((comp, lvl) for _, comp, lvl in group)
            entries.append(SpectrumEntry(group[0][0], len(members), members))
            group = []
        group.append(item)
    if group:
        members = tuple((comp, lvl) for _, comp, lvl in group)
        entries.append(SpectrumEntry(group[0][0], len(members), members))
    if max_entries is not None:
        entries = entries[:max_entries]
    return entries


def constraint_deviation(triplet: Triplet, x) -> float:
    """max |W2^2 - W1^2 - W1' - W2' - c| over the given points."""
    w1 = np.asarray(superpotential(triplet.w1, x))
    w2 = np.asarray(superpotential(triplet.w2, x))
    dw1 = np.asarray(superpotential_derivative(triplet.w1, x))
    dw2 = np.asarray(superpotential_derivative(triplet.w2, x))
    return float(np.max(np.abs(w2 * w2 - w1 * w1 - dw1 - dw2 - triplet.c)))


def limiting_pattern(n_value: int, choice: Choice, count: int) -> list[tuple[float, int]]:
    """Merged oscillator spectrum at an exact integer core strength.

    At alpha = N the chain spectrum collapses to E_k = -2N + 4k with
    degeneracies (1, 3, 3, ...) for the first choice and (2, 3, 3, ...)
    for the second.  Defined for the oscillator family only; the first
    choice needs N >= 2.

    Args:
        n_value: integer N the core strength limits to.
        choice: which chain.
        count: number of entries to return.

    Returns:
        [(energy, degeneracy)], lowest first.
    """
    if not isinstance(n_value, int) or isinstance(n_value, bool):
        raise ParameterError(f"limiting pattern: N = {n_value!r} must be an integer")
    least = 2 if choice is Choice.FIRST else 1
    if n_value < least:
        raise ParameterError(
            f"limiting pattern ({choice.value} choice) needs N >= {least}, got {n_value}"
        )
    if count < 0:
        raise ParameterError(f"limiting pattern: count = {count} must be >= 0")
    first_deg = 1 if choice is Choice.FIRST else 2
    return [
        (-2.0 * n_value + 4.0 * k, first_deg if k == 0 else 3) for k in range(count)
    ]


@dataclass(frozen=True)
class AlgebraReport:
    """Residuals of the chain algebra applied to test functions."""

    nilpotent_max: float
    trilinear_max: float
    trilinear_scale: float

    @property
    def trilinear_relative(self) -> float:
        return self.trilinear_max / max(self.trilinear_scale, 1e-300)


def _charge_apply(
    w_specs: tuple[Optional[SuperpotentialSpec], Optional[SuperpotentialSpec]],
    funcs: list[np.ndarray],
    x: np.ndarray,
    h: float,
    accuracy: int,
    raising: bool,
) -> list[np.ndarray]:
    """Apply Q (raising=False) or Qbar (raising=True) to a 3-component vector."""
    w1s, w2s = w_specs
    zero = np.zeros_like(funcs[0])

    def a_op(spec: SuperpotentialSpec, g: np.ndarray) -> np.ndarray:
        w = np.asarray(superpotential(spec, x))
        dg = fd_derivative(g, h, order=1, accuracy=accuracy)
        return (-dg if raising else dg) + w * g

    if raising:
        return [a_op(w1s, funcs[1]), a_op(w2s, funcs[2]), zero.copy()]
    return [zero.copy(), a_op(w1s, funcs[0]), a_op(w2s, funcs[1])]


def algebra_deviation(
    triplet: Triplet,
    probes: Sequence[Callable[[np.ndarray], np.ndarray]],
    grid: Grid,
    accuracy: int = 2,
    trim: Optional[int] = None,
) -> AlgebraReport:
    """Check Q^3 = 0 and the trilinear relation on test functions.

    Q^3 annihilates every 3-component vector structurally (each charge
    application shifts the nonzero slots down one row), so its residual
    is exactly zero; the trilinear residual

        (Q^2 Qbar + Q Qbar Q + Qbar Q^2 - 2 Q H) F

    is limited by the finite differences used for the derivatives and
    shrinks as h^accuracy.

    Args:
        triplet: the chain.
        probes: test functions; each is placed in all three slots.
        grid: uniform evaluation grid.
        accuracy: stencil order for every derivative, 2 or 4.
        trim: edge points dropped before the max (default scales with
            the three stacked derivative layers).
    """
    x = grid.points
    h = grid.spacing
    margin = 8 * (accuracy + 1) if trim is None else trim
    if 2 * margin >= x.size:
        raise ParameterError("algebra_deviation: grid too small for the trim")
    specs = (triplet.w1, triplet.w2)
    vs = [
        np.asarray(potential(p, x)) + off for p, off in triplet.components
    ]

    def h_op(funcs: list[np.ndarray]) -> list[np.ndarray]:
        return [
            -fd_derivative(g, h, order=2, accuracy=accuracy) + v * g
            for v, g in zip(vs, funcs)
        ]

    def q_op(funcs: list[np.ndarray]) -> list[np.ndarray]:
        return _charge_apply(specs, funcs, x, h, accuracy, raising=False)

    def qbar_op(funcs: list[np.ndarray]) -> list[np.ndarray]:
        return _charge_apply(specs, funcs, x, h, accuracy, raising=True)

    nil_max = 0.0
    tri_max = 0.0
    tri_scale = 0.0
    inner = slice(margin, -margin)
    for probe in probes:
        f = np.asarray(probe(x), dtype=np.complex128)
        vec = [f, f.copy(), f.copy()]
        cubed = q_op(q_op(q_op(vec)))
        nil_max = max(nil_max, max(float(np.max(np.abs(c[inner]))) for c in cubed))
        t1 = q_op(q_op(qbar_op(vec)))
        t2 = q_op(qbar_op(q_op(vec)))
        t3 = qbar_op(q_op(q_op(vec)))
        rhs = q_op(h_op(vec))
        for c1_, c2_, c3_, r in zip(t1, t2, t3, rhs):
            resid = c1_ + c2_ + c3_ - 2.0 * r
            tri_max = max(tri_max, float(np.max(np.abs(resid[inner]))))
            tri_scale = max(tri_scale, float(np.max(np.abs(2.0 * r[inner]))))
    return AlgebraReport(
        nilpotent_max=nil_max, trilinear_max=tri_max, trilinear_scale=tri_scale
    )
