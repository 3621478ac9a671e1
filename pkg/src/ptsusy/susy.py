"""First-order factorizations of the solvable families.

A superpotential W factorizes a Hamiltonian through the pair of
first-order operators

    A = d/dx + W(x),        A_bar = -d/dx + W(x),

so that A_bar A = -d^2/dx^2 + V_plus - E and
A A_bar = -d^2/dx^2 + V_minus - E with the partner potentials

    V_plus  = W^2 - W' + E,      V_minus = W^2 + W' + E,

E being the factorization energy.  Each family supports two
inequivalent superpotentials (here ``primary`` and ``secondary``); the
oscillator family supports two more, ``primary-shifted`` and
``secondary-shifted``, which coincide with primary/secondary at a core
strength shifted by one and change which Hamiltonian sits on the
``plus`` side.

Both partner potentials land back inside the same family with shifted
parameters (possibly plus an additive constant); :func:`partner_map`
returns that identification and :func:`partner_map_deviation` measures
it pointwise.  A annihilates exactly one bound state of the plus-side
Hamiltonian, reported by :func:`annihilated_state`.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.typing import NDArray

from .errors import ParameterError
from .numerics.grid import Grid, fd_derivative
from .potentials import (
    Level,
    OscillatorParams,
    Params,
    PoschlTellerParams,
    eigenfunction,
    eigenfunction_derivative,
    family_of,
    potential,
)

__all__ = [
    "Variant",
    "SuperpotentialSpec",
    "PartnerMap",
    "available_variants",
    "superpotential",
    "superpotential_derivative",
    "factorization_energy",
    "partner_potentials",
    "partner_map",
    "partner_map_deviation",
    "annihilated_state",
    "annihilation_deviation",
    "apply_lowering",
    "apply_raising",
    "intertwining_deviation",
]


class Variant(enum.Enum):
    """Which superpotential of a family to use."""

    PRIMARY = "primary"
    SECONDARY = "secondary"
    PRIMARY_SHIFTED = "primary-shifted"
    SECONDARY_SHIFTED = "secondary-shifted"

    @classmethod
    def from_label(cls, label: str) -> "Variant":
        for var in cls:
            if var.value == label:
                return var
        known = ", ".join(v.value for v in cls)
        raise ParameterError(f"unknown variant {label!r}; expected one of: {known}")


def available_variants(params: Params) -> tuple[Variant, ...]:
    """Variants defined for this family (the shifted pair is oscillator-only)."""
    if isinstance(params, OscillatorParams):
        return (
            Variant.PRIMARY,
            Variant.SECONDARY,
            Variant.PRIMARY_SHIFTED,
            Variant.SECONDARY_SHIFTED,
        )
    return (Variant.PRIMARY, Variant.SECONDARY)


@dataclass(frozen=True)
class SuperpotentialSpec:
    """One superpotential: a parameter set plus a variant choice."""

    params: Params
    variant: Variant = Variant.PRIMARY

    def __post_init__(self) -> None:
        if self.variant not in available_variants(self.params):
            raise ParameterError(
                f"variant {self.variant.value!r} is not defined for the "
                f"{family_of(self.params).value} family"
            )


@dataclass(frozen=True)
class PartnerMap:
    """Family identification of the two partner potentials.

    V_plus equals the family potential at ``plus_params`` shifted by the
    constant ``plus_offset``; same for the minus side.
    """

    plus_params: Params
    plus_offset: float
    minus_params: Params
    minus_offset: float


def _oscillator_pole_coefficient(spec: SuperpotentialSpec) -> float:
    alpha = spec.params.alpha
    return {
        Variant.PRIMARY: alpha - 0.5,
        Variant.SECONDARY: -(alpha + 0.5),
        Variant.PRIMARY_SHIFTED: alpha + 0.5,
        Variant.SECONDARY_SHIFTED: -(alpha - 0.5),
    }[spec.variant]


def _hyperbolic_coefficients(spec: SuperpotentialSpec) -> tuple[float, float]:
    """Coefficients (t, s) of the two hyperbolic basis terms.

    Poschl-Teller: W = t coth(tau) - s cosech(tau).
    Scarf II:      W = t tanh(x) + i s sech(x).
    In both cases the factorization energy is -t^2.
    """
    p = spec.params
    if isinstance(p, PoschlTellerParams):
        if spec.variant is Variant.PRIMARY:
            return p.b - 0.5, p.a + 0.5
        return p.a, p.b
    if spec.variant is Variant.PRIMARY:
        return p.a, p.b
    return p.b - 0.5, p.a + 0.5


def superpotential(spec: SuperpotentialSpec, x) -> NDArray[np.complex128]:
    """Evaluate W at real coordinates x."""
    scalar = np.ndim(x) == 0
    p = spec.params
    if isinstance(p, OscillatorParams):
        z = np.asarray(x, dtype=np.complex128) - 1j * p.delta
        out = z + _oscillator_pole_coefficient(spec) / z
    elif isinstance(p, PoschlTellerParams):
        tau = np.asarray(x, dtype=np.complex128) - 1j * p.gamma
        t, s = _hyperbolic_coefficients(spec)
        sh = np.sinh(tau)
        out = (t * np.cosh(tau) - s) / sh
    else:
        xr = np.asarray(x, dtype=np.complex128)
        t, s = _hyperbolic_coefficients(spec)
        out = t * np.tanh(xr) + 1j * s / np.cosh(xr)
    return complex(out) if scalar else out


def superpotential_derivative(spec: SuperpotentialSpec, x) -> NDArray[np.complex128]:
    """Evaluate dW/dx analytically at real coordinates x."""
    scalar = np.ndim(x) == 0
    p = spec.params
    if isinstance(p, OscillatorParams):
        z = np.asarray(x, dtype=np.complex128) - 1j * p.delta
        out = 1.0 - _oscillator_pole_coefficient(spec) / (z * z)
    elif isinstance(p, PoschlTellerParams):
        tau = np.asarray(x, dtype=np.complex128) - 1j * p.gamma
        t, s = _hyperbolic_coefficients(spec)
        csch = 1.0 / np.sinh(tau)
        out = -t * csch * csch + s * csch * np.cosh(tau) * csch
    else:
        xr = np.asarray(x, dtype=np.complex128)
        t, s = _hyperbolic_coefficients(spec)
        sech = 1.0 / np.cosh(xr)
        out = t * sech * sech - 1j * s * sech * np.tanh(xr)
    return complex(out) if scalar else out


def factorization_energy(spec: SuperpotentialSpec) -> float:
    """The constant E in A_bar A = H_plus - E."""
    p = spec.params
    if isinstance(p, OscillatorParams):
        return 1.0 - 2.0 * _oscillator_pole_coefficient(spec)
    t, _ = _hyperbolic_coefficients(spec)
    return -(t**2)


def partner_potentials(spec: SuperpotentialSpec, x) -> tuple[np.ndarray, np.ndarray]:
    """(V_plus, V_minus) built directly from W, W' and E.

    This is the factorization route; :func:`partner_map` gives the
    closed-form family route, and the two are compared by
    :func:`partner_map_deviation`.
    """
    w = np.asarray(superpotential(spec, x))
    dw = np.asarray(superpotential_derivative(spec, x))
    e = factorization_energy(spec)
    return w * w - dw + e, w * w + dw + e


def _shift_oscillator(params: OscillatorParams, step: int) -> OscillatorParams:
    alpha = params.alpha + step
    if not alpha > 0:
        raise ParameterError(
            f"oscillator: shifted core strength alpha{step:+d} = {alpha} "
            "violates alpha > 0"
        )
    return dataclasses.replace(params, alpha=alpha)


def partner_map(spec: SuperpotentialSpec) -> PartnerMap:
    """Identify both partner potentials inside the family.

    Raises:
        ParameterError: when the oscillator parameter shift would leave
            the family domain (shifted alpha <= 0).
    """
    p = spec.params
    if isinstance(p, OscillatorParams):
        same = dataclasses.replace(p)
        if spec.variant is Variant.PRIMARY:
            return PartnerMap(same, 0.0, _shift_oscillator(p, -1), 2.0)
        if spec.variant is Variant.SECONDARY:
            return PartnerMap(same, 0.0, _shift_oscillator(p, +1), 2.0)
        if spec.variant is Variant.PRIMARY_SHIFTED:
            return PartnerMap(_shift_oscillator(p, +1), 0.0, same, 2.0)
        return PartnerMap(_shift_oscillator(p, -1), 0.0, same, 2.0)
    if isinstance(p, PoschlTellerParams):
        if spec.variant is Variant.PRIMARY:
            minus = dataclasses.replace(p, b=p.b - 1.0)
        else:
            minus = dataclasses.replace(p, a=p.a - 1.0)
        return PartnerMap(dataclasses.replace(p), 0.0, minus, 0.0)
    if spec.variant is Variant.PRIMARY:
        minus = dataclasses.replace(p, a=p.a - 1.0)
    else:
        minus = dataclasses.replace(p, b=p.b - 1.0)
    return PartnerMap(dataclasses.replace(p), 0.0, minus, 0.0)


def partner_map_deviation(spec: SuperpotentialSpec, x) -> tuple[float, float]:
    """Pointwise check of :func:`partner_map` against the W-route.

    Returns:
        (plus_deviation, minus_deviation): max |V from W - V from the
        family map| over the given points, for each partner.
    """
    vplus, vminus = partner_potentials(spec, x)
    m = partner_map(spec)
    ref_plus = np.asarray(potential(m.plus_params, x)) + m.plus_offset
    ref_minus = np.asarray(potential(m.minus_params, x)) + m.minus_offset
    return (
        float(np.max(np.abs(vplus - ref_plus))),
        float(np.max(np.abs(vminus - ref_minus))),
    )


def annihilated_state(spec: SuperpotentialSpec) -> tuple[Params, Level]:
    """The bound state killed by A = d/dx + W.

    Returns:
        (params, level): the family parameter set whose eigenfunction is
        annihilated (for the shifted oscillator variants this is the
        shifted set) and the level label within it.
    """
    p = spec.params
    if isinstance(p, OscillatorParams):
        if spec.variant is Variant.PRIMARY:
            return dataclasses.replace(p), Level(+1, 0)
        if spec.variant is Variant.SECONDARY:
            return dataclasses.replace(p), Level(-1, 0)
        if spec.variant is Variant.PRIMARY_SHIFTED:
            return _shift_oscillator(p, +1), Level(+1, 0)
        return _shift_oscillator(p, -1), Level(-1, 0)
    if spec.variant is Variant.PRIMARY:
        return dataclasses.replace(p), Level(+1, 0)
    return dataclasses.replace(p), Level(-1, 0)


def apply_lowering(spec: SuperpotentialSpec, x, f, df) -> np.ndarray:
    """A f = f' + W f from sampled f and f'."""
    return np.asarray(df) + np.asarray(superpotential(spec, x)) * np.asarray(f)


def apply_raising(spec: SuperpotentialSpec, x, f, df) -> np.ndarray:
    """A_bar f = -f' + W f from sampled f and f'."""
    return -np.asarray(df) + np.asarray(superpotential(spec, x)) * np.asarray(f)


def annihilation_deviation(spec: SuperpotentialSpec, x) -> float:
    """max |A psi| / max |psi| for the designated bound state.

    Both psi and psi' are evaluated from the closed forms, so the
    deviation is pure roundoff when the annihilation property holds.
    """
    state_params, level = annihilated_state(spec)
    psi = np.asarray(eigenfunction(state_params, level.q, level.n, x))
    dpsi = np.asarray(eigenfunction_derivative(state_params, level.q, level.n, x))
    scale = float(np.max(np.abs(psi)))
    if scale == 0.0:
        raise ParameterError("annihilation_deviation: state vanished on the grid")
    residual = apply_lowering(spec, x, psi, dpsi)
    return float(np.max(np.abs(residual))) / scale


def intertwining_deviation(
    spec: SuperpotentialSpec,
    probe: Callable[[np.ndarray], np.ndarray],
    grid: Grid,
    accuracy: int = 2,
    trim: Optional[int] = None,
) -> float:
    """max |A(H_plus f) - H_minus(A f)| with all derivatives by stencil.

    Every derivative, inner and outer, uses the same finite-difference
    accuracy, so the deviation scales as h^accuracy and halving h should
    shrink it by about 2^accuracy; the boundary rows corrupted by
    one-sided stencils are trimmed before taking the max.

    Args:
        spec: superpotential under test.
        probe: smooth test function evaluated on the grid points.
        grid: uniform grid; its spacing sets h.
        accuracy: stencil truncation order, 2 or 4.
        trim: points dropped at each end (default 4 * (accuracy + 1)).
    """
    x = grid.points
    h = grid.spacing
    margin = 4 * (accuracy + 1) if trim is None else trim
    if 2 * margin >= x.size:
        raise ParameterError("intertwining_deviation: grid too small for the trim")
    f = np.asarray(probe(x), dtype=np.complex128)
    w = np.asarray(superpotential(spec, x))
    vplus, vminus = partner_potentials(spec, x)
    af = fd_derivative(f, h, order=1, accuracy=accuracy) + w * f
    hplus_f = -fd_derivative(f, h, order=2, accuracy=accuracy) + vplus * f
    lhs = fd_derivative(hplus_f, h, order=1, accuracy=accuracy) + w * hplus_f
    rhs = -fd_derivative(af, h, order=2, accuracy=accuracy) + vminus * af
    return float(np.max(np.abs((lhs - rhs)[margin:-margin])))
