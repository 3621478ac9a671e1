"""Special functions on complex arguments, built on explicit recurrences.

The potentials in this package live on complex contours (a real line
shifted off the axis), so every routine here accepts complex scalars or
numpy arrays and stays on the principal branch.  Nothing is delegated to
scipy: orthogonal polynomials are evaluated by their three-term
recurrences, powers through the principal logarithm, and the hyperbolic
family through a small struct with pole-guarded accessors.

Conventions
-----------
* ``generalized_laguerre(n, a, z)`` is L_n^(a)(z) with
  L_0 = 1, L_1 = 1 + a - z and
  (k+1) L_{k+1} = (2k + 1 + a - z) L_k - (k + a) L_{k-1}.
* ``jacobi_polynomial(n, a, b, y)`` is P_n^(a,b)(y) with P_0 = 1,
  P_1 = ((a - b) + (a + b + 2) y) / 2 and the standard three-term
  recurrence.  For the parameter ranges used here the recurrence's
  leading coefficient 2(k+1)(k+a+b+1)(2k+a+b) can vanish exactly at
  integer parameter coincidences; that raises
  :class:`~ptsusy.errors.DegenerateRecurrenceError` rather than
  silently dividing by zero.
* ``principal_power(z, s)`` is exp(s Log z) with Log the principal
  branch; z = 0 maps to 0 when Re(s) > 0 and is a domain error
  otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import NDArray

from .errors import DegenerateRecurrenceError, DomainError, PoleError

__all__ = [
    "POLE_TOL",
    "ComplexLike",
    "principal_power",
    "generalized_laguerre",
    "generalized_laguerre_derivative",
    "jacobi_polynomial",
    "jacobi_polynomial_derivative",
    "Hyperbolics",
    "complex_hyperbolics",
]

ComplexLike = Union[complex, float, NDArray[np.complexfloating]]

# Below this magnitude a hyperbolic denominator is treated as a pole:
# the quotient would exceed ~1e12 and carry no usable precision.
POLE_TOL = 1e-12


def _as_complex(z: ComplexLike) -> NDArray[np.complexfloating]:
    return np.asarray(z, dtype=np.complex128)


def _match_input(values: NDArray[np.complexfloating], template: ComplexLike):
    """Return a scalar when the input was a scalar, else the array."""
    if np.ndim(template) == 0:
        return complex(values)
    return values


def principal_power(z: ComplexLike, s: complex) -> ComplexLike:
    """z**s through the principal logarithm, exp(s Log z).

    Unlike the builtin ``**`` this is single-valued and continuous off
    the negative real axis, which keeps products of fractional powers
    consistent between factored and combined forms.

    Args:
        z: base, complex scalar or array.  Zero is allowed only when
            Re(s) > 0, where the limit 0 is returned.
        s: exponent.

    Raises:
        DomainError: if z == 0 and Re(s) <= 0.
    """
    zc = _as_complex(z)
    sc = complex(s)
    zero = zc == 0
    if np.any(zero):
        if sc.real <= 0:
            raise DomainError(
                f"principal_power: z=0 with exponent {sc} (Re <= 0) is undefined"
            )
        out = np.zeros_like(zc)
        nz = ~zero
        out[nz] = np.exp(sc * np.log(zc[nz]))
        return _match_input(out, z)
    return _match_input(np.exp(sc * np.log(zc)), z)


def generalized_laguerre(n: int, a: float, z: ComplexLike) -> ComplexLike:
    """Generalized Laguerre polynomial L_n^(a)(z) for complex z.

    The parameter a may be any real number (including values <= -1,
    where the weight-function orthogonality breaks down but the
    polynomial itself is still defined by the recurrence).

    Args:
        n: degree, n >= 0.
        a: real parameter.
        z: argument, complex scalar or array.

    Returns:
        L_n^(a)(z), matching the shape of z.
    """
    if n < 0:
        raise DomainError(f"generalized_laguerre: degree n={n} must be >= 0")
    zc = _as_complex(z)
    prev = np.ones_like(zc)
    if n == 0:
        return _match_input(prev, z)
    cur = 1.0 + a - zc
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - zc) * cur - (k + a) * prev) / (k + 1)
    return _match_input(cur, z)


def generalized_laguerre_derivative(n: int, a: float, z: ComplexLike) -> ComplexLike:
    """d/dz L_n^(a)(z) = -L_{n-1}^(a+1)(z); zero for n = 0."""
    if n == 0:
        return _match_input(np.zeros_like(_as_complex(z)), z)
    return -generalized_laguerre(n - 1, a + 1.0, z)


def jacobi_polynomial(n: int, a: float, b: float, y: ComplexLike) -> ComplexLike:
    """Jacobi polynomial P_n^(a,b)(y) for complex y and real a, b.

    Evaluated by the three-term recurrence

        2(k+1)(k+a+b+1)(2k+a+b) P_{k+1}
            = (2k+a+b+1) [ (2k+a+b+2)(2k+a+b) y + a^2 - b^2 ] P_k
              - 2 (k+a)(k+b)(2k+a+b+2) P_{k-1}.

    The parameters may be negative (the bound-state wavefunctions here
    need b < -1); only an exactly vanishing leading coefficient is
    rejected, since then P_{k+1} is genuinely not determined by the
    recurrence.

    Raises:
        DegenerateRecurrenceError: when 2(k+1)(k+a+b+1)(2k+a+b) == 0
            exactly for some intermediate degree k < n.
    """
    if n < 0:
        raise DomainError(f"jacobi_polynomial: degree n={n} must be >= 0")
    yc = _as_complex(y)
    prev = np.ones_like(yc)
    if n == 0:
        return _match_input(prev, y)
    cur = 0.5 * ((a - b) + (a + b + 2.0) * yc)
    for k in range(1, n):
        lead = 2.0 * (k + 1) * (k + a + b + 1.0) * (2 * k + a + b)
        if lead == 0.0:
            raise DegenerateRecurrenceError(
                f"jacobi_polynomial: recurrence degenerate at degree k={k} "
                f"for (a, b)=({a}, {b}); leading coefficient vanished exactly"
            )
        mid = (2 * k + a + b + 1.0) * (
            (2 * k + a + b + 2.0) * (2 * k + a + b) * yc + (a * a - b * b)
        )
        low = 2.0 * (k + a) * (k + b) * (2 * k + a + b + 2.0)
        prev, cur = cur, (mid * cur - low * prev) / lead
    return _match_input(cur, y)


def jacobi_polynomial_derivative(n: int, a: float, b: float, y: ComplexLike) -> ComplexLike:
    """d/dy P_n^(a,b)(y) = (n+a+b+1)/2 * P_{n-1}^(a+1,b+1)(y); zero for n = 0."""
    if n == 0:
        return _match_input(np.zeros_like(_as_complex(y)), y)
    return 0.5 * (n + a + b + 1.0) * jacobi_polynomial(n - 1, a + 1.0, b + 1.0, y)


@dataclass(frozen=True)
class Hyperbolics:
    """cosh/sinh of one complex argument plus guarded derived ratios.

    The ratio accessors raise :class:`~ptsusy.errors.PoleError` whenever
    the denominator magnitude drops below :data:`POLE_TOL` at any
    requested point, naming the offending function.  On the shifted
    contours used by the potentials (z = x - i*shift with shift bounded
    away from 0 and |shift| <= pi/4) the denominators are bounded away
    from zero, so a pole here always indicates a bad contour.
    """

    z: ComplexLike
    cosh: ComplexLike
    sinh: ComplexLike

    def _guard(self, denom: ComplexLike, name: str) -> None:
        mag = np.abs(np.asarray(denom))
        if np.any(mag < POLE_TOL):
            idx = int(np.argmin(mag))
            at = np.asarray(self.z).ravel()[idx] if np.ndim(self.z) else self.z
            raise PoleError(f"{name}: pole encountered near z = {complex(at)}")

    @property
    def tanh(self) -> ComplexLike:
        self._guard(self.cosh, "tanh")
        return self.sinh / self.cosh

    @property
    def coth(self) -> ComplexLike:
        self._guard(self.sinh, "coth")
        return self.cosh / self.sinh

    @property
    def sech(self) -> ComplexLike:
        self._guard(self.cosh, "sech")
        return 1.0 / self.cosh

    @property
    def cosech(self) -> ComplexLike:
        self._guard(self.sinh, "cosech")
        return 1.0 / self.sinh


def complex_hyperbolics(z: ComplexLike) -> Hyperbolics:
    """Evaluate cosh and sinh once and expose the guarded ratio family."""
    zc = _as_complex(z)
    return Hyperbolics(
        z=_match_input(zc, z),
        cosh=_match_input(np.cosh(zc), z),
        sinh=_match_input(np.sinh(zc), z),
    )
