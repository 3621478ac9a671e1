"""Shared helpers for the test suite.

The numerical checks here deliberately avoid the package's own
finite-difference code: residuals are formed with a locally defined
five-point stencil so that an error in the library's stencils cannot
cancel against itself.
"""

import numpy as np


def five_point_dd(fn, x, h=1e-3):
    """Second derivative of fn at points x by the central 5-point rule."""
    x = np.asarray(x)
    return (
        -fn(x + 2 * h) + 16 * fn(x + h) - 30 * fn(x)
        + 16 * fn(x - h) - fn(x - 2 * h)
    ) / (12 * h * h)


def pair_off(got, expected):
    """Greedy nearest matching of two same-length value sets.

    Returns the largest pairing distance.  Used to compare eigenvalue
    sets that come back in implementation-defined orders.
    """
    pool = list(expected)
    worst = 0.0
    for g in got:
        k = int(np.argmin([abs(g - e) for e in pool]))
        worst = max(worst, abs(g - pool.pop(k)))
    return worst
