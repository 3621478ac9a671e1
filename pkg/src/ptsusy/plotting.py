"""Figure rendering for CLI reports.

Everything here draws to files through the Agg backend; no window is
ever opened.  The CLI calls these only when asked for figures, so the
library import cost stays off the fast path (matplotlib is imported
lazily inside each function).
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "save_level_diagram",
    "save_potential_curves",
    "save_superpotential_curves",
    "save_residual_bars",
    "save_eigenvalue_scatter",
]


def _axes(figsize):
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt.subplots(figsize=figsize)


def _finish(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    import matplotlib.pyplot as plt

    plt.close(fig)
    return path


def save_level_diagram(
    path, energies: Sequence[float], degeneracies: Sequence[int], title: str
) -> Path:
    """Horizontal-bar level diagram; bar width encodes degeneracy."""
    fig, ax = _axes((6.0, 4.5))
    for e, d in zip(energies, degeneracies):
        ax.hlines(e, 0.5, 0.5 + d, linewidth=2.2)
        ax.annotate(f"d={d}", xy=(0.5 + d + 0.08, e), va="center", fontsize=8)
    ax.set_xlim(0, max((d for d in degeneracies), default=1) + 1.6)
    ax.set_xticks([])
    ax.set_ylabel("energy")
    ax.set_title(title)
    return _finish(fig, Path(path))


def save_potential_curves(path, x, v, title: str) -> Path:
    """Re V and Im V over the grid."""
    fig, ax = _axes((6.4, 4.0))
    v = np.asarray(v)
    ax.plot(x, v.real, label="Re V")
    ax.plot(x, v.imag, label="Im V", linestyle="--")
    ax.set_xlabel("x")
    ax.set_ylabel("V(x)")
    ax.legend()
    ax.set_title(title)
    return _finish(fig, Path(path))


def save_superpotential_curves(path, x, curves: dict, title: str) -> Path:
    """Several complex curves (p, W1, W2, ...) on one axes."""
    fig, ax = _axes((6.4, 4.0))
    for name, values in curves.items():
        vals = np.asarray(values)
        ax.plot(x, vals.real, label=f"Re {name}")
        ax.plot(x, vals.imag, label=f"Im {name}", linestyle="--")
    ax.set_xlabel("x")
    ax.legend(fontsize=8, ncol=2)
    ax.set_title(title)
    return _finish(fig, Path(path))


def save_residual_bars(path, names: Sequence[str], measured, allowed, title: str) -> Path:
    """Residuals against their bounds on a log axis."""
    fig, ax = _axes((7.0, 4.2))
    pos = np.arange(len(names))
    floor = 1e-17
    ax.bar(pos, np.maximum(np.asarray(measured, dtype=float), floor), width=0.6)
    ax.scatter(pos, allowed, marker="_", s=400, color="tab:red", label="allowed")
    ax.set_yscale("log")
    ax.set_xticks(pos)
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("residual")
    ax.legend()
    ax.set_title(title)
    return _finish(fig, Path(path))


def save_eigenvalue_scatter(path, eigenvalues, title: str) -> Path:
    """Eigenvalues in the complex plane."""
    fig, ax = _axes((5.6, 4.6))
    lam = np.asarray(eigenvalues)
    ax.scatter(lam.real, lam.imag, s=12)
    ax.axhline(0.0, linewidth=0.6, color="gray")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title)
    return _finish(fig, Path(path))
