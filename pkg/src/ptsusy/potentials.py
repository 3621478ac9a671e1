"""Three exactly solvable complex potentials with real spectra.

Each family is PT symmetric, conj(V(-x)) = V(x), and carries two towers
of bound states labelled by a quasi-parity q = +1 or q = -1:

* ``oscillator``: V(x) = z^2 + (alpha^2 - 1/4)/z^2 on the shifted line
  z = x - i*delta.  Spectrum E_{q,n} = 4n + 2 - 2*q*alpha, both towers
  unbounded.
* ``poschl-teller``: V(x) = [b^2 + a(a+1)] cosech^2(tau)
  - b(2a+1) cosech(tau) coth(tau) on tau = x - i*gamma.  Finitely many
  bound states, E_{+,n} = -(b - 1/2 - n)^2 and E_{-,n} = -(a - n)^2.
* ``scarf-ii``: V(x) = -[b^2 + a(a+1)] sech^2(x)
  + i*b(2a+1) sech(x) tanh(x) on the real line.  Finitely many bound
  states, E_{+,n} = -(a - n)^2 and E_{-,n} = -(b - 1/2 - n)^2.

A tower with parameter t holds the levels n = 0, ..., ceil(t) - 1 (none
when t <= 0): the bound-state condition is t - n > 0.

Parameter sets are plain frozen dataclasses and do not validate on
construction; :func:`validate` applies the strict admissibility rules
and names the violated constraint.  The ``limiting`` flag admits the
integer parameter coincidences at which the two towers degenerate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

import numpy as np

from .errors import LevelRangeError, ParameterError, PoleError
from .special_functions import (
    POLE_TOL,
    ComplexLike,
    complex_hyperbolics,
    generalized_laguerre,
    generalized_laguerre_derivative,
    jacobi_polynomial,
    jacobi_polynomial_derivative,
    principal_power,
)

__all__ = [
    "Family",
    "OscillatorParams",
    "PoschlTellerParams",
    "ScarfParams",
    "Params",
    "Level",
    "family_of",
    "validate",
    "potential",
    "energy",
    "tower_parameter",
    "n_max",
    "bound_levels",
    "eigenfunction",
    "eigenfunction_derivative",
    "pt_symmetry_deviation",
]

GAMMA_MAX = math.pi / 4


class Family(enum.Enum):
    """The three potential families, keyed by their command-line labels."""

    OSCILLATOR = "oscillator"
    POSCHL_TELLER = "poschl-teller"
    SCARF_II = "scarf-ii"

    @classmethod
    def from_label(cls, label: str) -> "Family":
        for fam in cls:
            if fam.value == label:
                return fam
        known = ", ".join(f.value for f in cls)
        raise ParameterError(f"unknown family {label!r}; expected one of: {known}")


@dataclass(frozen=True)
class OscillatorParams:
    """Shifted harmonic oscillator with a centrifugal-like core.

    Attributes:
        alpha: core strength exponent, > 0; the two towers are split by
            4*alpha.  Integer values merge the towers and are admitted
            only with ``limiting=True``.
        delta: downward imaginary shift of the line, > 0.
        limiting: admit integer alpha (tower degeneracy limit).
    """

    alpha: float
    delta: float
    limiting: bool = False


@dataclass(frozen=True)
class PoschlTellerParams:
    """Generalized Poschl-Teller well on a shifted line.

    Attributes:
        a: strength parameter, a > -1/2; sets the minus tower, t = a.
        b: strength parameter, b > a + 1/2; sets the plus tower,
            t = b - 1/2.
        gamma: imaginary shift of the line, in [-pi/4, 0) or (0, pi/4).
        limiting: admit integer b - a - 1/2 (tower coincidence limit).
    """

    a: float
    b: float
    gamma: float
    limiting: bool = False


@dataclass(frozen=True)
class ScarfParams:
    """Scarf II well with an imaginary asymmetric part, on the real line.

    Attributes:
        a: strength parameter, a > b - 1/2; sets the plus tower, t = a.
        b: strength parameter, b > 1/2; sets the minus tower,
            t = b - 1/2.
        limiting: admit integer a - b + 1/2 (tower coincidence limit).
    """

    a: float
    b: float
    limiting: bool = False


Params = Union[OscillatorParams, PoschlTellerParams, ScarfParams]


class Level(NamedTuple):
    """One bound-state label: quasi-parity q in {+1, -1} and index n >= 0."""

    q: int
    n: int


def family_of(params: Params) -> Family:
    if isinstance(params, OscillatorParams):
        return Family.OSCILLATOR
    if isinstance(params, PoschlTellerParams):
        return Family.POSCHL_TELLER
    if isinstance(params, ScarfParams):
        return Family.SCARF_II
    raise ParameterError(f"unrecognized parameter set {params!r}")


def validate(params: Params) -> None:
    """Check strict admissibility, naming the violated constraint.

    Raises:
        ParameterError: with a message identifying the first violated
            constraint.
    """
    if isinstance(params, OscillatorParams):
        if not params.alpha > 0:
            raise ParameterError(
                f"oscillator: alpha = {params.alpha} violates alpha > 0"
            )
        if not params.delta > 0:
            raise ParameterError(
                f"oscillator: delta = {params.delta} violates delta > 0"
            )
        if float(params.alpha).is_integer() and not params.limiting:
            raise ParameterError(
                f"oscillator: alpha = {params.alpha} is an integer, which merges "
                "the two towers; pass limiting=True to admit it"
            )
    elif isinstance(params, PoschlTellerParams):
        if not params.a + 0.5 > 0:
            raise ParameterError(
                f"poschl-teller: a = {params.a} violates a + 1/2 > 0"
            )
        if not params.b > params.a + 0.5:
            raise ParameterError(
                f"poschl-teller: (a, b) = ({params.a}, {params.b}) violates "
                "b > a + 1/2"
            )
        g = params.gamma
        if g == 0.0 or g < -GAMMA_MAX or g >= GAMMA_MAX:
            raise ParameterError(
                f"poschl-teller: gamma = {g} outside [-pi/4, 0) u (0, pi/4)"
            )
        if float(params.b - params.a - 0.5).is_integer() and not params.limiting:
            raise ParameterError(
                f"poschl-teller: b - a - 1/2 = {params.b - params.a - 0.5} is an "
                "integer, which makes the towers coincide; pass limiting=True"
            )
    elif isinstance(params, ScarfParams):
        if not params.b > 0.5:
            raise ParameterError(
                f"scarf-ii: b = {params.b} violates b > 1/2"
            )
        if not params.a > params.b - 0.5:
            raise ParameterError(
                f"scarf-ii: (a, b) = ({params.a}, {params.b}) violates a > b - 1/2"
            )
        if float(params.a - params.b + 0.5).is_integer() and not params.limiting:
            raise ParameterError(
                f"scarf-ii: a - b + 1/2 = {params.a - params.b + 0.5} is an "
                "integer, which makes the towers coincide; pass limiting=True"
            )
    else:
        raise ParameterError(f"unrecognized parameter set {params!r}")


def _check_level(params: Params, q: int, n: int) -> None:
    if q not in (1, -1):
        raise ParameterError(f"quasi-parity q = {q} must be +1 or -1")
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
        raise ParameterError(f"level index n = {n!r} must be an integer >= 0")
    top = n_max(params, q)
    if top is not None and n > top:
        raise LevelRangeError(
            f"{family_of(params).value}: level n = {n} beyond the top of the "
            f"q = {q:+d} tower (n_max = {top})",
            n_max=top,
        )


def _shifted(params: Params, x: ComplexLike) -> ComplexLike:
    if isinstance(params, OscillatorParams):
        return np.asarray(x, dtype=np.complex128) - 1j * params.delta
    if isinstance(params, PoschlTellerParams):
        return np.asarray(x, dtype=np.complex128) - 1j * params.gamma
    return np.asarray(x, dtype=np.complex128)


def potential(params: Params, x: ComplexLike) -> ComplexLike:
    """Evaluate the family potential at real coordinates x.

    Args:
        params: one of the three parameter sets (not re-validated here;
            any evaluable set is accepted).
        x: real scalar or array of coordinates.

    Returns:
        Complex potential values, matching the shape of x.
    """
    scalar = np.ndim(x) == 0
    if isinstance(params, OscillatorParams):
        z = _shifted(params, x)
        if np.any(np.abs(z) < POLE_TOL):
            raise PoleError("oscillator potential: contour passes through z = 0")
        out = z * z + (params.alpha**2 - 0.25) / (z * z)
    elif isinstance(params, PoschlTellerParams):
        h = complex_hyperbolics(_shifted(params, x))
        csch = np.asarray(h.cosech)
        out = (params.b**2 + params.a * (params.a + 1)) * csch * csch - params.b * (
            2 * params.a + 1
        ) * csch * np.asarray(h.coth)
    elif isinstance(params, ScarfParams):
        xr = np.asarray(x, dtype=np.complex128)
        sech = 1.0 / np.cosh(xr)
        out = -(params.b**2 + params.a * (params.a + 1)) * sech * sech + 1j * params.b * (
            2 * params.a + 1
        ) * sech * np.tanh(xr)
    else:
        raise ParameterError(f"unrecognized parameter set {params!r}")
    return complex(out) if scalar else out


def tower_parameter(params: Params, q: int) -> Optional[float]:
    """Tower parameter t with E_n = -(t - n)^2, or None when unbounded.

    The oscillator towers are unbounded and return None; for the
    hyperbolic families the bound levels are exactly n with t - n > 0.
    """
    if q not in (1, -1):
        raise ParameterError(f"quasi-parity q = {q} must be +1 or -1")
    if isinstance(params, OscillatorParams):
        return None
    if isinstance(params, PoschlTellerParams):
        return params.b - 0.5 if q == 1 else params.a
    if isinstance(params, ScarfParams):
        return params.a if q == 1 else params.b - 0.5
    raise ParameterError(f"unrecognized parameter set {params!r}")


def n_max(params: Params, q: int) -> Optional[int]:
    """Largest bound index of a tower: ceil(t) - 1.

    Returns:
        None for an unbounded tower (oscillator); -1 for an empty tower
        (t <= 0); otherwise the unique integer in [t - 1, t).
    """
    t = tower_parameter(params, q)
    if t is None:
        return None
    if t <= 0:
        return -1
    return math.ceil(t) - 1


def energy(params: Params, q: int, n: int) -> float:
    """Bound-state energy of level (q, n).

    Raises:
        LevelRangeError: when n exceeds the tower's n_max (the error
            carries that n_max).
    """
    _check_level(params, q, n)
    if isinstance(params, OscillatorParams):
        return 4.0 * n + 2.0 - 2.0 * q * params.alpha
    t = tower_parameter(params, q)
    return -((t - n) ** 2)


def bound_levels(
    params: Params,
    energy_cutoff: Optional[float] = None,
    max_per_tower: Optional[int] = None,
) -> list[tuple[Level, float]]:
    """Enumerate bound levels of both towers, sorted by energy.

    For the hyperbolic families the full finite list is returned (both
    optional limits may still trim it).  The oscillator towers are
    unbounded, so at least one of ``energy_cutoff`` or
    ``max_per_tower`` is required there.

    Ties are ordered by (energy, -q, n).
    """
    out: list[tuple[Level, float]] = []
    for q in (1, -1):
        top = n_max(params, q)
        if top is None:
            if energy_cutoff is None and max_per_tower is None:
                raise ParameterError(
                    "oscillator towers are unbounded: pass energy_cutoff "
                    "and/or max_per_tower"
                )
            top = max_per_tower - 1 if max_per_tower is not None else None
            n = 0
            while top is None or n <= top:
                e = energy(params, q, n)
                if energy_cutoff is not None and e > energy_cutoff:
                    break
                out.append((Level(q, n), e))
                n += 1
        else:
            stop = top if max_per_tower is None else min(top, max_per_tower - 1)
            for n in range(stop + 1):
                e = energy(params, q, n)
                if energy_cutoff is not None and e > energy_cutoff:
                    continue
                out.append((Level(q, n), e))
    out.sort(key=lambda item: (item[1], -item[0][0], item[0][1]))
    return out


def _half_angle_powers(
    tau: ComplexLike, s_minus: float, s_plus: float
) -> ComplexLike:
    """(cosh(tau) - 1)^s_minus (cosh(tau) + 1)^s_plus, continuous in x.

    cosh(tau) - 1 crosses the negative real axis where x changes sign,
    so literal principal powers would jump there.  The half-argument
    identities cosh(tau) - 1 = 2 sinh^2(tau/2) and
    cosh(tau) + 1 = 2 cosh^2(tau/2) give factors whose arguments stay
    in a fixed half-plane on the shifted line, hence one continuous
    analytic branch.
    """
    half = np.asarray(tau, dtype=np.complex128) / 2.0
    sh, ch = np.sinh(half), np.cosh(half)
    return np.exp(
        s_minus * (math.log(2.0) + 2.0 * np.log(sh))
        + s_plus * (math.log(2.0) + 2.0 * np.log(ch))
    )


def _pt_exponents(params: PoschlTellerParams, q: int) -> tuple[float, float, float, float]:
    """Prefactor exponents (s_minus, s_plus) and Jacobi parameters (pa, pb)."""
    a, b = params.a, params.b
    if q == 1:
        return (a - b + 1.0) / 2.0, -(a + b) / 2.0, a - b + 0.5, -a - b - 0.5
    return (b - a) / 2.0, -(b + a) / 2.0, b - a - 0.5, -b - a - 0.5


def eigenfunction(params: Params, q: int, n: int, x: ComplexLike) -> ComplexLike:
    """Closed-form bound eigenfunction of level (q, n), coefficient 1.

    The returned function solves -psi'' + V psi = E psi but is not
    normalized; the leading closed-form coefficient is taken to be 1.

    Args:
        params: family parameters.
        q: quasi-parity, +1 or -1.
        n: level index within the tower.
        x: real coordinates.

    Raises:
        LevelRangeError: when (q, n) is not a bound level.
    """
    _check_level(params, q, n)
    scalar = np.ndim(x) == 0
    if isinstance(params, OscillatorParams):
        z = _shifted(params, x)
        sigma = -q * params.alpha + 0.5
        out = (
            np.exp(-0.5 * z * z)
            * principal_power(z, sigma)
            * generalized_laguerre(n, -q * params.alpha, z * z)
        )
    elif isinstance(params, PoschlTellerParams):
        tau = _shifted(params, x)
        s_minus, s_plus, pa, pb = _pt_exponents(params, q)
        y = np.cosh(tau)
        out = _half_angle_powers(tau, s_minus, s_plus) * jacobi_polynomial(n, pa, pb, y)
    elif isinstance(params, ScarfParams):
        xr = np.asarray(x, dtype=np.complex128)
        sh = np.sinh(xr)
        sech = 1.0 / np.cosh(xr)
        if q == 1:
            a0, b0, pa, pb = params.a, params.b, -params.a + params.b - 0.5, -params.a - params.b - 0.5
        else:
            a0, b0 = params.b - 0.5, params.a + 0.5
            pa, pb = params.a - params.b + 0.5, -params.a - params.b - 0.5
        out = (
            principal_power(sech, a0)
            * np.exp(-1j * b0 * np.arctan(np.real(sh) if np.isrealobj(x) else sh))
            * jacobi_polynomial(n, pa, pb, 1j * sh)
        )
    else:
        raise ParameterError(f"unrecognized parameter set {params!r}")
    return complex(out) if scalar else out


def eigenfunction_derivative(params: Params, q: int, n: int, x: ComplexLike) -> ComplexLike:
    """d/dx of :func:`eigenfunction`, evaluated analytically.

    Uses the closed derivative identities of the Laguerre and Jacobi
    polynomials, so the result carries no finite-difference error.
    """
    _check_level(params, q, n)
    scalar = np.ndim(x) == 0
    psi = np.asarray(eigenfunction(params, q, n, x))
    if isinstance(params, OscillatorParams):
        z = _shifted(params, x)
        sigma = -q * params.alpha + 0.5
        # log-derivative of exp(-z^2/2) z^sigma plus the polynomial term
        logder = -z + sigma / z
        poly_term = (
            np.exp(-0.5 * z * z)
            * principal_power(z, sigma)
            * generalized_laguerre_derivative(n, -q * params.alpha, z * z)
            * 2.0
            * z
        )
        out = psi * logder + poly_term
    elif isinstance(params, PoschlTellerParams):
        tau = _shifted(params, x)
        s_minus, s_plus, pa, pb = _pt_exponents(params, q)
        half = tau / 2.0
        logder = s_minus * np.cosh(half) / np.sinh(half) + s_plus * np.tanh(half)
        y = np.cosh(tau)
        poly = jacobi_polynomial(n, pa, pb, y)
        dpoly = jacobi_polynomial_derivative(n, pa, pb, y)
        prefac = _half_angle_powers(tau, s_minus, s_plus)
        # psi = prefac * P(y): the logder term carries prefac' and the
        # chain rule dy/dx = sinh(tau) carries P'.
        out = prefac * (logder * poly + dpoly * np.sinh(tau))
    elif isinstance(params, ScarfParams):
        xr = np.asarray(x, dtype=np.complex128)
        sh, ch = np.sinh(xr), np.cosh(xr)
        sech = 1.0 / ch
        if q == 1:
            a0, b0, pa, pb = params.a, params.b, -params.a + params.b - 0.5, -params.a - params.b - 0.5
        else:
            a0, b0 = params.b - 0.5, params.a + 0.5
            pa, pb = params.a - params.b + 0.5, -params.a - params.b - 0.5
        logder = -a0 * np.tanh(xr) - 1j * b0 * sech
        prefac = principal_power(sech, a0) * np.exp(
            -1j * b0 * np.arctan(np.real(sh) if np.isrealobj(x) else sh)
        )
        dpoly = jacobi_polynomial_derivative(n, pa, pb, 1j * sh)
        out = psi * logder + prefac * dpoly * 1j * ch
    else:
        raise ParameterError(f"unrecognized parameter set {params!r}")
    return complex(out) if scalar else out


def pt_symmetry_deviation(params: Params, x: ComplexLike) -> float:
    """max |conj(V(-x)) - V(x)| over a symmetric grid.

    Args:
        params: family parameters.
        x: grid of real coordinates, required to be symmetric about 0
            (x reversed must equal -x exactly to within 1e-15).

    Raises:
        ParameterError: if the grid is not symmetric about the origin.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if xs.size == 0 or np.max(np.abs(xs + xs[::-1])) > 1e-15:
        raise ParameterError(
            "pt_symmetry_deviation: grid must be symmetric about x = 0"
        )
    v = np.asarray(potential(params, xs))
    return float(np.max(np.abs(np.conj(v[::-1]) - v)))
