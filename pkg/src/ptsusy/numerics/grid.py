"""Uniform grids, finite-difference stencils, and Hamiltonian discretization.

The grid is symmetric about x = 0 by construction: points are built as
signed integer (or half-integer) offsets times the spacing, so
x[i] == -x[n-1-i] holds bit-exactly.  That exactness matters: the
PT-symmetry check compares V at mirrored points and should measure the
potential, not the grid.

Stencil weights come from Fornberg's recursion, which gives the unique
finite-difference weights of any derivative order on arbitrary nodes.
Interior rows use centered stencils; near the edges the same-order
one-sided stencils are substituted, except in the Hamiltonian matrix,
where points beyond the boundary are dropped (a homogeneous Dirichlet
wall).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from ..errors import ParameterError

__all__ = [
    "Grid",
    "fornberg_weights",
    "fd_derivative",
    "hamiltonian_matrix",
    "discretize_hamiltonian",
]


@dataclass(frozen=True)
class Grid:
    """n interior points of [-L, L] with a Dirichlet boundary at +-L.

    Attributes:
        half_width: L > 0.
        npoints: number of interior points, n >= 3.
    """

    half_width: float
    npoints: int

    def __post_init__(self) -> None:
        if not self.half_width > 0:
            raise ParameterError(f"grid half_width {self.half_width} must be > 0")
        if self.npoints < 3:
            raise ParameterError(f"grid npoints {self.npoints} must be >= 3")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.npoints + 1)

    @cached_property
    def points(self) -> NDArray[np.float64]:
        # offsets are exact (half-)integers, so mirrored points negate exactly
        offsets = np.arange(self.npoints, dtype=float) - (self.npoints - 1) / 2.0
        return offsets * self.spacing


def fornberg_weights(z: float, nodes: NDArray[np.float64], order: int) -> NDArray[np.float64]:
    """Finite-difference weights on arbitrary nodes (Fornberg 1988).

    Args:
        z: evaluation point.
        nodes: distinct sample points, len(nodes) >= order + 1.
        order: highest derivative order m >= 0.

    Returns:
        Array of shape (order + 1, len(nodes)); row k holds the weights
        of the k-th derivative at z.
    """
    x = np.asarray(nodes, dtype=float)
    n = x.size
    if n < order + 1:
        raise ParameterError(
            f"fornberg_weights: {n} nodes cannot resolve derivative order {order}"
        )
    w = np.zeros((order + 1, n))
    w[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0] - z
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    w[k, i] = c1 * (k * w[k - 1, i - 1] - c5 * w[k, i - 1]) / c2
                w[0, i] = -c1 * c5 * w[0, i - 1] / c2
            for k in range(mn, 0, -1):
                w[k, j] = (c4 * w[k, j] - k * w[k - 1, j]) / c3
            w[0, j] = c4 * w[0, j] / c3
        c1 = c2
    return w


def _central_weights(order: int, accuracy: int) -> NDArray[np.float64]:
    if accuracy not in (2, 4):
        raise ParameterError(f"fd accuracy {accuracy} not supported (use 2 or 4)")
    half = (order + accuracy - 1) // 2
    nodes = np.arange(-half, half + 1, dtype=float)
    return fornberg_weights(0.0, nodes, order)[order]


def fd_derivative(
    values: NDArray[np.complexfloating],
    spacing: float,
    order: int = 1,
    accuracy: int = 2,
) -> NDArray[np.complexfloating]:
    """Differentiate uniformly sampled values.

    Centered stencils fill the interior; the first and last few entries
    fall back to same-order one-sided stencils, so callers doing
    operator compositions should trim a margin of roughly
    ``order + accuracy`` points per application before comparing.

    Args:
        values: samples on a uniform grid.
        spacing: grid step h > 0.
        order: derivative order >= 1.
        accuracy: formal order of the truncation error, 2 or 4.
    """
    if spacing <= 0:
        raise ParameterError(f"fd spacing {spacing} must be > 0")
    if order < 1:
        raise ParameterError(f"fd derivative order {order} must be >= 1")
    v = np.asarray(values)
    weights = _central_weights(order, accuracy)
    half = (weights.size - 1) // 2
    width = weights.size
    if v.size < width:
        raise ParameterError(
            f"fd_derivative: need at least {width} samples, got {v.size}"
        )
    out = np.zeros(v.shape, dtype=np.complex128)
    core = np.zeros(v.size - 2 * half, dtype=np.complex128)
    for k, wk in enumerate(weights):
        if wk != 0.0:
            core += wk * v[k : k + core.size]
    out[half:-half] = core
    # one-sided rows: same derivative order on the leading/trailing nodes
    edge_nodes = np.arange(width, dtype=float)
    for i in range(half):
        w_left = fornberg_weights(float(i), edge_nodes, order)[order]
        out[i] = w_left @ v[:width]
        w_right = fornberg_weights(float(width - 1 - i), edge_nodes, order)[order]
        out[-1 - i] = w_right @ v[-width:]
    return out / spacing**order


def hamiltonian_matrix(
    potential_values: NDArray[np.complexfloating],
    spacing: float,
    accuracy: int = 4,
) -> NDArray[np.complex128]:
    """Dense matrix of -d^2/dx^2 + V on a Dirichlet grid.

    Stencil taps that fall outside the grid are dropped, which is the
    homogeneous Dirichlet condition psi(+-L) = 0.  The result is complex
    symmetric, tridiagonal for accuracy 2 and pentadiagonal for
    accuracy 4.

    Args:
        potential_values: V at the interior grid points.
        spacing: grid step h > 0.
        accuracy: truncation order of the second derivative, 2 or 4.
    """
    if spacing <= 0:
        raise ParameterError(f"grid spacing {spacing} must be > 0")
    v = np.asarray(potential_values, dtype=np.complex128)
    n = v.size
    if n < 3:
        raise ParameterError("hamiltonian_matrix: need at least 3 grid points")
    if accuracy == 2:
        stencil = np.array([-1.0, 2.0, -1.0]) / spacing**2
    elif accuracy == 4:
        stencil = np.array([1.0, -16.0, 30.0, -16.0, 1.0]) / (12.0 * spacing**2)
    else:
        raise ParameterError(f"hamiltonian accuracy {accuracy} not supported (2 or 4)")
    half = (stencil.size - 1) // 2
    out = np.zeros((n, n), dtype=np.complex128)
    for k in range(-half, half + 1):
        w = stencil[k + half]
        idx = np.arange(max(0, -k), min(n, n - k))
        out[idx, idx + k] += w
    out[np.arange(n), np.arange(n)] += v
    return out


def discretize_hamiltonian(potential, grid: Grid, order: int = 4) -> NDArray[np.complex128]:
    """Matrix of -d^2/dx^2 + V(x) on a grid, from the potential function.

    Args:
        potential: callable mapping grid points to complex values (an
            already-sampled array is also accepted).
        grid: interior points and spacing.
        order: truncation order of the Laplacian stencil, 2 or 4.

    Raises:
        ParameterError: V is non-finite at a node.
    """
    values = potential(grid.points) if callable(potential) else np.asarray(potential)
    values = np.asarray(values, dtype=np.complex128)
    if values.shape != grid.points.shape:
        raise ParameterError(
            f"potential sampling has shape {values.shape}, grid has {grid.points.shape}"
        )
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise ParameterError(
            f"potential is non-finite at x = {grid.points[bad]!r} (node {bad})"
        )
    return hamiltonian_matrix(values, grid.spacing, accuracy=order)
