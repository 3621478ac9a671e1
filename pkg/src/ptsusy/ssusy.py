"""Second-order supersymmetry generated by second-derivative charges.

The charges are the second-order operators

    Aplus  = d^2/dx^2 - 2 p(x) d/dx + b(x),
    Aminus = d^2/dx^2 + 2 p(x) d/dx + 2 p'(x) + b(x),

with one gauge function p fixing everything else in the reducible case
(a = 0, d = -c^2/4):

    b = -p' + p^2 - p''/(2p) + (p'/(2p))^2 + d/(4 p^2).

Both charges factor into the first-order pieces q_i(-+) = -+d/dx + W_i,

    Aplus = q1(+) q2(+),      Aminus = q2(-) q1(-),
    W_1 = p - (2p' + c)/(4p), W_2 = p + (2p' + c)/(4p),

and those W_i are exactly the two superpotentials of the order-two
chain (see :mod:`ptsusy.psusy`) with c = c1 - c2.  The superpartners

    h1 = -d^2/dx^2 + W_1^2 - W_1' + c/2,
    h2 = -d^2/dx^2 + W_2^2 + W_2' - c/2,

satisfy the second-order intertwining Aminus h1 = h2 Aminus and close
on the quasi-Hamiltonian

    Aplus Aminus = h1^2 - c^2/4,     Aminus Aplus = h2^2 - c^2/4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ParameterError, PoleError
from .numerics.grid import Grid, fd_derivative
from .potentials import (
    OscillatorParams,
    Params,
    PoschlTellerParams,
    ScarfParams,
    family_of,
    validate,
)
from .psusy import Choice, Triplet, build_triplet, shift_constant
from .susy import superpotential
from .special_functions import POLE_TOL

__all__ = [
    "SsusyMap",
    "ConsistencyReport",
    "from_family",
    "gauge_function",
    "b_coefficient",
    "component_potentials",
    "superpotential_pair",
    "superpotential_pair_derivative",
    "apply_plus_charge",
    "apply_minus_charge",
    "factorization_deviation",
    "quasi_hamiltonian_deviation",
    "intertwining_deviation",
    "compare_with_triplet",
]


@dataclass(frozen=True)
class SsusyMap:
    """One family, one choice, and the constant c they induce."""

    params: Params
    choice: Choice
    c: float

    @property
    def d(self) -> float:
        """The quartic-invariant constant of the reducible case, -c^2/4."""
        return -self.c * self.c / 4.0


def from_family(params: Params, choice: Choice) -> SsusyMap:
    """Build the map for a validated family parameter set.

    c equals c1 - c2 of the order-two chain by construction (the same
    arithmetic expression is evaluated), so the cross-consistency
    comparison is exact.

    Raises:
        ParameterError: invalid parameters, or (oscillator, first
            choice) with alpha <= 1 where the chain is undefined.
    """
    validate(params)
    if (
        isinstance(params, OscillatorParams)
        and choice is Choice.FIRST
        and not params.alpha > 1.0
    ):
        raise ParameterError(
            f"oscillator first choice needs alpha > 1, got {params.alpha}"
        )
    c1 = shift_constant(params, choice)
    return SsusyMap(params=params, choice=choice, c=2.0 * c1)


def gauge_function(m: SsusyMap, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """p, p', p'' at real coordinates x, all in closed form."""
    p = m.params
    xc = np.asarray(x, dtype=np.complex128)
    if isinstance(p, OscillatorParams):
        z = xc - 1j * p.delta
        return z, np.ones_like(z), np.zeros_like(z)
    scale = 0.5 * (p.a + p.b - 0.5)
    if isinstance(p, PoschlTellerParams):
        half = (xc - 1j * p.gamma) / 2.0
        th = np.tanh(half)
        sq = 1.0 - th * th
        return scale * th, 0.5 * scale * sq, -0.5 * scale * sq * th
    if isinstance(p, ScarfParams):
        sech = 1.0 / np.cosh(xc)
        th = np.tanh(xc)
        val = scale * (th + 1j * sech)
        d1 = scale * (sech * sech - 1j * sech * th)
        d2 = scale * (-2.0 * sech * sech * th - 1j * sech * (sech * sech - th * th))
        return val, d1, d2
    raise ParameterError(f"unrecognized parameter set {p!r}")


def _guarded_gauge(m: SsusyMap, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    pv, dp, d2p = gauge_function(m, x)
    if np.any(np.abs(pv) < POLE_TOL):
        raise PoleError(
            f"{family_of(m.params).value} gauge function vanishes on the grid; "
            "the 1/p terms are undefined there"
        )
    return pv, dp, d2p


def b_coefficient(m: SsusyMap, x) -> np.ndarray:
    """The zeroth-order coefficient b(x) of the plus charge."""
    pv, dp, d2p = _guarded_gauge(m, x)
    ratio = dp / (2.0 * pv)
    return -dp + pv * pv - d2p / (2.0 * pv) + ratio * ratio + m.d / (4.0 * pv * pv)


def component_potentials(m: SsusyMap, x) -> tuple[np.ndarray, np.ndarray]:
    """(V1, V2) of the superpartners h1, h2, from the gauge function."""
    pv, dp, d2p = _guarded_gauge(m, x)
    ratio = dp / (2.0 * pv)
    tail = pv * pv + d2p / (2.0 * pv) - ratio * ratio - m.d / (4.0 * pv * pv)
    return -2.0 * dp + tail, 2.0 * dp + tail


def superpotential_pair(m: SsusyMap, x) -> tuple[np.ndarray, np.ndarray]:
    """(W1, W2) from the gauge function and c."""
    pv, dp, _ = _guarded_gauge(m, x)
    u = (2.0 * dp + m.c) / (4.0 * pv)
    return pv - u, pv + u


def superpotential_pair_derivative(m: SsusyMap, x) -> tuple[np.ndarray, np.ndarray]:
    """(W1', W2') in closed form."""
    pv, dp, d2p = _guarded_gauge(m, x)
    du = d2p / (2.0 * pv) - dp * (2.0 * dp + m.c) / (4.0 * pv * pv)
    return dp - du, dp + du


def apply_plus_charge(m: SsusyMap, x, f, df, d2f) -> np.ndarray:
    """Aplus f from sampled f, f', f''."""
    pv, _, _ = _guarded_gauge(m, x)
    return np.asarray(d2f) - 2.0 * pv * np.asarray(df) + b_coefficient(m, x) * np.asarray(f)


def apply_minus_charge(m: SsusyMap, x, f, df, d2f) -> np.ndarray:
    """Aminus f from sampled f, f', f''."""
    pv, dp, _ = _guarded_gauge(m, x)
    return (
        np.asarray(d2f)
        + 2.0 * pv * np.asarray(df)
        + (2.0 * dp + b_coefficient(m, x)) * np.asarray(f)
    )


def factorization_deviation(m: SsusyMap, probe, x) -> tuple[float, float]:
    """Residuals of Aplus = q1(+) q2(+) and Aminus = q2(-) q1(-).

    Every ingredient (probe derivatives, W_i, W_i') is analytic, so
    both residuals are pure roundoff when the factorization holds.

    Args:
        m: the map.
        probe: test function with ``derivative`` and
            ``second_derivative`` methods.
        x: evaluation points.

    Returns:
        (plus_deviation, minus_deviation), each max |direct - factored|.
    """
    f = np.asarray(probe(x))
    df = np.asarray(probe.derivative(x))
    d2f = np.asarray(probe.second_derivative(x))
    w1, w2 = superpotential_pair(m, x)
    dw1, dw2 = superpotential_pair_derivative(m, x)

    direct_plus = apply_plus_charge(m, x, f, df, d2f)
    g = -df + w2 * f
    dg = -d2f + dw2 * f + w2 * df
    factored_plus = -dg + w1 * g
    plus_dev = float(np.max(np.abs(direct_plus - factored_plus)))

    direct_minus = apply_minus_charge(m, x, f, df, d2f)
    g = df + w1 * f
    dg = d2f + dw1 * f + w1 * df
    factored_minus = dg + w2 * g
    minus_dev = float(np.max(np.abs(direct_minus - factored_minus)))
    return plus_dev, minus_dev


def _fd_outer(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float):
    """First and second derivative of func by order-4 central stencils."""
    samples = [np.asarray(func(x + k * h)) for k in range(-2, 3)]
    d1 = (samples[0] - 8.0 * samples[1] + 8.0 * samples[3] - samples[4]) / (12.0 * h)
    d2 = (
        -samples[0] + 16.0 * samples[1] - 30.0 * samples[2] + 16.0 * samples[3] - samples[4]
    ) / (12.0 * h * h)
    return d1, d2


def quasi_hamiltonian_deviation(
    m: SsusyMap, probe, x, outer_spacing: float = 0.002
) -> float:
    """Residual of Aplus Aminus = h1^2 - c^2/4 and its partner block.

    The inner operator application is analytic; only the outermost
    second-order operator is applied by an order-4 stencil of spacing
    ``outer_spacing``, identically on both sides of each identity.

    Args:
        m: the map.
        probe: test function with analytic first and second derivatives.
        x: evaluation points (kept away from zeros of p).
        outer_spacing: stencil spacing h of the single numeric layer.

    Returns:
        max |lhs - rhs| over both diagonal blocks and all points.
    """
    xv = np.asarray(x, dtype=float)
    c2_4 = m.c * m.c / 4.0

    def inner_minus(pts: np.ndarray) -> np.ndarray:
        return apply_minus_charge(
            m, pts, probe(pts), probe.derivative(pts), probe.second_derivative(pts)
        )

    def inner_plus(pts: np.ndarray) -> np.ndarray:
        return apply_plus_charge(
            m, pts, probe(pts), probe.derivative(pts), probe.second_derivative(pts)
        )

    def h1_f(pts: np.ndarray) -> np.ndarray:
        v1 = component_potentials(m, pts)[0]
        return -np.asarray(probe.second_derivative(pts)) + v1 * np.asarray(probe(pts))

    def h2_f(pts: np.ndarray) -> np.ndarray:
        v2 = component_potentials(m, pts)[1]
        return -np.asarray(probe.second_derivative(pts)) + v2 * np.asarray(probe(pts))

    worst = 0.0
    for inner, outer_sign, h_apply, v_index in (
        (inner_minus, -1.0, h1_f, 0),
        (inner_plus, +1.0, h2_f, 1),
    ):
        d1g, d2g = _fd_outer(inner, xv, outer_spacing)
        g = inner(xv)
        pv, dp, _ = _guarded_gauge(m, xv)
        bv = b_coefficient(m, xv)
        if outer_sign < 0:
            lhs = d2g - 2.0 * pv * d1g + bv * g
        else:
            lhs = d2g + 2.0 * pv * d1g + (2.0 * dp + bv) * g
        _, d2u = _fd_outer(h_apply, xv, outer_spacing)
        u = h_apply(xv)
        v = component_potentials(m, xv)[v_index]
        rhs = (-d2u + v * u) - c2_4 * np.asarray(probe(xv))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def intertwining_deviation(
    m: SsusyMap,
    probe: Callable[[np.ndarray], np.ndarray],
    grid: Grid,
    accuracy: int = 2,
    trim: Optional[int] = None,
) -> float:
    """max |Aminus(h1 f) - h2(Aminus f)| with all derivatives by stencil.

    Like the first-order intertwining check this is fully finite
    difference: the deviation shrinks as h^accuracy under grid
    refinement.
    """
    x = grid.points
    h = grid.spacing
    margin = 8 * (accuracy + 1) if trim is None else trim
    if 2 * margin >= x.size:
        raise ParameterError("intertwining_deviation: grid too small for the trim")
    f = np.asarray(probe(x), dtype=np.complex128)
    pv, dp, _ = _guarded_gauge(m, x)
    bv = b_coefficient(m, x)
    v1, v2 = component_potentials(m, x)

    def minus(g: np.ndarray) -> np.ndarray:
        return (
            fd_derivative(g, h, order=2, accuracy=accuracy)
            + 2.0 * pv * fd_derivative(g, h, order=1, accuracy=accuracy)
            + (2.0 * dp + bv) * g
        )

    h1f = -fd_derivative(f, h, order=2, accuracy=accuracy) + v1 * f
    af = minus(f)
    lhs = minus(h1f)
    rhs = -fd_derivative(af, h, order=2, accuracy=accuracy) + v2 * af
    return float(np.max(np.abs((lhs - rhs)[margin:-margin])))


@dataclass(frozen=True)
class ConsistencyReport:
    """Agreement between this map and the order-two chain."""

    w1_deviation: float
    w2_deviation: float
    c_value: float
    c_from_chain: float
    c_exact: bool
    c_product_relative: float


def _closed_product(params: Params, choice: Choice) -> float:
    """Closed product form of c, an independent arithmetic route."""
    if isinstance(params, OscillatorParams):
        return -4.0 * params.alpha if choice is Choice.FIRST else 4.0 * params.alpha
    product = (params.a + params.b - 0.5) * (params.a - params.b + 0.5)
    if isinstance(params, PoschlTellerParams):
        return product if choice is Choice.FIRST else -product
    return -product if choice is Choice.FIRST else product


def compare_with_triplet(
    m: SsusyMap, x, triplet: Optional[Triplet] = None
) -> ConsistencyReport:
    """Compare (W1, W2, c) against the order-two chain pointwise.

    Args:
        m: the map.
        x: comparison points.
        triplet: the chain to compare against (built from the same
            parameters and choice when omitted).
    """
    t = build_triplet(m.params, m.choice) if triplet is None else triplet
    w1, w2 = superpotential_pair(m, x)
    tw1 = np.asarray(superpotential(t.w1, x))
    tw2 = np.asarray(superpotential(t.w2, x))
    c_chain = t.c
    product = _closed_product(m.params, m.choice)
    return ConsistencyReport(
        w1_deviation=float(np.max(np.abs(w1 - tw1))),
        w2_deviation=float(np.max(np.abs(w2 - tw2))),
        c_value=m.c,
        c_from_chain=c_chain,
        c_exact=bool(m.c == c_chain),
        c_product_relative=abs(m.c - product) / max(abs(m.c), 1e-300),
    )
