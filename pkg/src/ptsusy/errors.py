"""Exception hierarchy shared across the package.

Everything user-facing derives from :class:`PtsusyError` so callers can
catch one base class.  Input problems (bad parameters, out-of-range level
indices, math-domain violations) derive from :class:`ParameterError`,
which the command line maps to exit code 2.
"""

from __future__ import annotations

__all__ = [
    "PtsusyError",
    "ParameterError",
    "DomainError",
    "PoleError",
    "LevelRangeError",
    "DegenerateRecurrenceError",
]


class PtsusyError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(PtsusyError, ValueError):
    """Invalid input: parameters, level indices, grids, configuration."""


class DomainError(ParameterError):
    """Evaluation requested at a point outside a function's domain."""


class PoleError(DomainError):
    """Evaluation too close to a pole of a hyperbolic or rational factor.

    The message names the offending function and the point.
    """


class LevelRangeError(ParameterError):
    """Level index beyond the top of a finite tower.

    Attributes:
        n_max: largest admissible index for the requested tower, or -1
            when the tower holds no bound state at all.
    """

    def __init__(self, message: str, n_max: int):
        super().__init__(message)
        self.n_max = n_max


class DegenerateRecurrenceError(PtsusyError):
    """A three-term recurrence hit an exactly vanishing leading coefficient."""
