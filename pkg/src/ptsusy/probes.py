"""Smooth localized test functions with analytic derivatives.

Operator-identity checks (factorizations, intertwining relations,
algebra closures) need generic functions to act on.  Gaussians are used
throughout: they are smooth, localized away from contour poles, and
their derivatives are exact, so residuals measure only the operator
identity plus whatever finite differences the caller layers on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special_functions import ComplexLike

__all__ = ["GaussianProbe", "default_probes"]


@dataclass(frozen=True)
class GaussianProbe:
    """exp(-(x - center)^2 / (2 width^2)) with exact derivatives."""

    center: float
    width: float

    def __call__(self, x: ComplexLike) -> ComplexLike:
        u = (np.asarray(x, dtype=np.complex128) - self.center) / self.width
        return np.exp(-0.5 * u * u)

    def derivative(self, x: ComplexLike) -> ComplexLike:
        u = (np.asarray(x, dtype=np.complex128) - self.center) / self.width
        return -u / self.width * np.exp(-0.5 * u * u)

    def second_derivative(self, x: ComplexLike) -> ComplexLike:
        u = (np.asarray(x, dtype=np.complex128) - self.center) / self.width
        return (u * u - 1.0) / self.width**2 * np.exp(-0.5 * u * u)


def default_probes(centers: tuple[float, ...], width: float) -> tuple[GaussianProbe, ...]:
    """Probes at the given centers, all sharing one width."""
    if width <= 0 or not math.isfinite(width):
        raise ValueError(f"probe width {width} must be positive and finite")
    return tuple(GaussianProbe(center=c, width=width) for c in centers)
